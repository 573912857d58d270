#pragma once

// Umbrella header.

#include "hypertensor/bounds.hpp"
#include "hypertensor/eigenpair.hpp"
#include "hypertensor/error.hpp"
#include "hypertensor/hypergraph.hpp"
#include "hypertensor/io.hpp"
#include "hypertensor/nqz.hpp"
#include "hypertensor/oracle.hpp"
#include "hypertensor/positivity.hpp"
#include "hypertensor/report.hpp"
#include "hypertensor/sshopm.hpp"
#include "hypertensor/symmetry.hpp"
#include "hypertensor/tensor.hpp"
#include "hypertensor/zstar.hpp"
