// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "grmrepair/analysis.hpp"
#include "grmrepair/cluster.hpp"
#include "grmrepair/errors.hpp"
#include "grmrepair/field.hpp"
#include "grmrepair/fp_linalg.hpp"
#include "grmrepair/grm.hpp"
#include "grmrepair/io.hpp"
#include "grmrepair/poly.hpp"
#include "grmrepair/repair_multi.hpp"
#include "grmrepair/repair_single.hpp"
#include "grmrepair/subspace.hpp"
