#pragma once

#include "crk/constructions.hpp"
#include "crk/linalg.hpp"
#include "crk/matrix.hpp"
#include "crk/multi_poly.hpp"
#include "crk/poly_matrix.hpp"
#include "crk/random.hpp"
#include "crk/rational.hpp"
#include "crk/subspace.hpp"
#include "crk/uni_poly.hpp"
#include "crk/verification.hpp"
