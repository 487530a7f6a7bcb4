#pragma once

#include "crg/error.hpp"
#include "crg/field.hpp"
#include "crg/poly.hpp"
#include "crg/linalg.hpp"
#include "crg/subspace.hpp"
#include "crg/counting.hpp"
#include "crg/cosets.hpp"
#include "crg/hitting.hpp"
#include "crg/rng.hpp"
#include "crg/repair.hpp"
#include "crg/design.hpp"
#include "crg/serialize.hpp"
