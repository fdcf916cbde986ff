#pragma once

#include "chabauty/descriptor.hpp"
#include "chabauty/error.hpp"
#include "chabauty/finite_lattice.hpp"
#include "chabauty/json_io.hpp"
#include "chabauty/lattice.hpp"
#include "chabauty/linalg.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/qmatrix.hpp"
#include "chabauty/rational.hpp"
#include "chabauty/report.hpp"
#include "chabauty/subgroup.hpp"
