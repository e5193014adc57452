#pragma once

#include "rtoric/charfun.hpp"
#include "rtoric/falsify.hpp"
#include "rtoric/generators.hpp"
#include "rtoric/instance.hpp"
#include "rtoric/mod2_ring.hpp"
#include "rtoric/oracle_q.hpp"
#include "rtoric/oracle_r.hpp"
#include "rtoric/ring_comparison.hpp"
#include "rtoric/shelling.hpp"
#include "rtoric/spinc.hpp"
#include "rtoric/star_product.hpp"
#include "rtoric/toric_cohomology.hpp"
