#pragma once

#include "skewbraid/braid.hpp"
#include "skewbraid/cpoly.hpp"
#include "skewbraid/error.hpp"
#include "skewbraid/escape.hpp"
#include "skewbraid/factory.hpp"
#include "skewbraid/io.hpp"
#include "skewbraid/julia.hpp"
#include "skewbraid/monodromy.hpp"
#include "skewbraid/perm.hpp"
#include "skewbraid/skewparam.hpp"
