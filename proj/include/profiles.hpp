#pragma once

#include "profiles/permutation.hpp"
#include "profiles/constellation.hpp"
#include "profiles/profile_graph.hpp"
#include "profiles/validation.hpp"
#include "profiles/conversion.hpp"
#include "profiles/covering.hpp"
#include "profiles/surface.hpp"
#include "profiles/enumeration.hpp"
#include "profiles/format.hpp"
#include "profiles/render.hpp"
