// Copyright 2026 The dpmatch Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPMATCH_DPMATCH_HPP_
#define DPMATCH_DPMATCH_HPP_

#include "dpmatch/assign.hpp"
#include "dpmatch/community.hpp"
#include "dpmatch/error.hpp"
#include "dpmatch/graph.hpp"
#include "dpmatch/matchers.hpp"
#include "dpmatch/matrix.hpp"
#include "dpmatch/netgen.hpp"
#include "dpmatch/oracle.hpp"
#include "dpmatch/profile.hpp"
#include "dpmatch/random.hpp"

#endif  // DPMATCH_DPMATCH_HPP_
