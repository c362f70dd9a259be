#pragma once

#include "eqcurv/corpus.hpp"
#include "eqcurv/curvature.hpp"
#include "eqcurv/eigen.hpp"
#include "eqcurv/exact_solve.hpp"
#include "eqcurv/graph.hpp"
#include "eqcurv/rational.hpp"
#include "eqcurv/report.hpp"
#include "eqcurv/simplex.hpp"
#include "eqcurv/theorems.hpp"
