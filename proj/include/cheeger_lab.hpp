#pragma once

#include "cheeger_lab/candidate.hpp"
#include "cheeger_lab/constants.hpp"
#include "cheeger_lab/continuum.hpp"
#include "cheeger_lab/cut.hpp"
#include "cheeger_lab/domain.hpp"
#include "cheeger_lab/errors.hpp"
#include "cheeger_lab/estimators.hpp"
#include "cheeger_lab/graph.hpp"
#include "cheeger_lab/parallel.hpp"
#include "cheeger_lab/polytope.hpp"
#include "cheeger_lab/quadrature.hpp"
#include "cheeger_lab/random.hpp"
#include "cheeger_lab/sampling.hpp"
#include "cheeger_lab/spectral.hpp"
#include "cheeger_lab/vec.hpp"
#include "cheeger_lab/keyvalue.hpp"
#include "cheeger_lab/harness/checks.hpp"
#include "cheeger_lab/harness/config.hpp"
#include "cheeger_lab/harness/experiments.hpp"
#include "cheeger_lab/harness/report.hpp"
