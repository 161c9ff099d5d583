// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "hrisim/channel.hpp"
#include "hrisim/config.hpp"
#include "hrisim/design.hpp"
#include "hrisim/geometry.hpp"
#include "hrisim/oracle.hpp"
#include "hrisim/sweep.hpp"
