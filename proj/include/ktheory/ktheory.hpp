#pragma once

#include "ktheory/error.hpp"
#include "ktheory/integer.hpp"
#include "ktheory/matrix.hpp"
#include "ktheory/smith.hpp"
#include "ktheory/partition.hpp"
#include "ktheory/zp_module.hpp"
#include "ktheory/abelian.hpp"
#include "ktheory/rep_ring.hpp"
#include "ktheory/rmod.hpp"
#include "ktheory/kinv.hpp"
#include "ktheory/catalog.hpp"
#include "ktheory/kunneth.hpp"
#include "ktheory/spaces.hpp"
#include "ktheory/json_io.hpp"
