#pragma once

#include "jordan/types.hpp"
#include "jordan/triple_system.hpp"
#include "jordan/operators.hpp"
#include "jordan/domain.hpp"
#include "jordan/sampling.hpp"
#include "jordan/boundary.hpp"
#include "jordan/automorphisms.hpp"
#include "jordan/kernel.hpp"
#include "jordan/harness.hpp"
#include "jordan/serialize.hpp"
#include "jordan/parse.hpp"
