#ifndef POLYMEM_POLYMEM_HPP
#define POLYMEM_POLYMEM_HPP

#include "polymem/chain.hpp"
#include "polymem/errors.hpp"
#include "polymem/fp_matrix.hpp"
#include "polymem/json_io.hpp"
#include "polymem/lattice.hpp"
#include "polymem/membership.hpp"
#include "polymem/osculate.hpp"
#include "polymem/polytope.hpp"
#include "polymem/prime_field.hpp"
#include "polymem/qlinalg.hpp"
#include "polymem/rational.hpp"
#include "polymem/rng.hpp"
#include "polymem/series.hpp"
#include "polymem/sparse_poly.hpp"

#endif
