#pragma once

#include "podforge/field.hpp"
#include "podforge/ring.hpp"
#include "podforge/polynomial.hpp"
#include "podforge/linalg.hpp"
#include "podforge/univariate.hpp"
#include "podforge/groebner.hpp"
#include "podforge/hilbert.hpp"
#include "podforge/random.hpp"
#include "podforge/models.hpp"
#include "podforge/zerodim.hpp"
#include "podforge/duality.hpp"
#include "podforge/constructions.hpp"
#include "podforge/verify.hpp"
#include "podforge/io.hpp"
#include "podforge/acceptance.hpp"
