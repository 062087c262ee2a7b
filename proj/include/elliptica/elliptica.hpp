#pragma once

#include "elliptica/builder.hpp"
#include "elliptica/config.hpp"
#include "elliptica/core.hpp"
#include "elliptica/groups.hpp"
#include "elliptica/lattice.hpp"
#include "elliptica/rational.hpp"
#include "elliptica/render.hpp"
#include "elliptica/verifier.hpp"
#include "elliptica/weierstrass.hpp"
