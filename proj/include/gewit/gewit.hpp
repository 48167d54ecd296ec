// gewit.hpp: umbrella header.
#pragma once

#include "gewit/operator.hpp"
#include "gewit/weyl.hpp"
#include "gewit/simplex.hpp"
#include "gewit/witness.hpp"
#include "gewit/ppt.hpp"
#include "gewit/serialize.hpp"
#include "gewit/atlas.hpp"
#include "gewit/reproduce.hpp"
