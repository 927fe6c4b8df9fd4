#pragma once

#include "rcsfif/analysis.hpp"
#include "rcsfif/attractor.hpp"
#include "rcsfif/constraint.hpp"
#include "rcsfif/cubic.hpp"
#include "rcsfif/error.hpp"
#include "rcsfif/evaluate.hpp"
#include "rcsfif/io.hpp"
#include "rcsfif/mesh.hpp"
#include "rcsfif/model.hpp"
#include "rcsfif/scenarios.hpp"
#include "rcsfif/validate.hpp"
