#pragma once

#include "errors.hpp"
#include "expression.hpp"
#include "geometry.hpp"
#include "greens.hpp"
#include "momentfit.hpp"
#include "oracle.hpp"
#include "polyroots.hpp"
#include "quad1d.hpp"
#include "region.hpp"
