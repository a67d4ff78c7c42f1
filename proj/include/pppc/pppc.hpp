#pragma once

// Umbrella header.

#include "pppc/catalog.hpp"
#include "pppc/channel.hpp"
#include "pppc/errors.hpp"
#include "pppc/gf2.hpp"
#include "pppc/llr.hpp"
#include "pppc/oracle.hpp"
#include "pppc/polar.hpp"
#include "pppc/product.hpp"
#include "pppc/scl.hpp"
#include "pppc/spec_io.hpp"
#include "pppc/turbo.hpp"
