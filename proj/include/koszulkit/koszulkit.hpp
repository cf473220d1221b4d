#pragma once

#include "algebra.hpp"
#include "complex.hpp"
#include "generators.hpp"
#include "koszul.hpp"
#include "linalg.hpp"
#include "module.hpp"
#include "module_expr.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "resolution.hpp"
#include "series.hpp"
#include "suite.hpp"
