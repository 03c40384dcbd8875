#pragma once

// Independent reference computations used to cross-check the library.

#include "orbiclan/clannish.hpp"
#include "orbiclan/species.hpp"

#include <random>

#include <set>
#include <vector>

namespace orbiclan::testing {

/// Every arrow sequence of length d, filtered for composability and for
/// the forbidden factors Z and ss, by exhaustive product enumeration.
std::set<std::vector<std::size_t>> brute_force_words(const clannish::ClannishPresentation& p, std::size_t d);

/// dim_R of the degree-d tensor power, from the product formula
/// prod dim A / prod dim F over composable arrow paths.
std::size_t tensor_power_dim(const species::SpeciesData& sp, std::size_t d);

/// dim_R of the degree-d part of the ideal generated by rels, as the rank
/// of all products u r v with u, v running over tensor bases.
std::size_t direct_ideal_dim(const species::TensorAlgebra& ta, const std::vector<species::Relation>& rels,
                             std::size_t d);

/// Random degree-2 element with small rational coefficients, supported on
/// monomials whose two outer fields are C. Empty if there are none.
species::Element random_outer_complex_tensor(const species::TensorAlgebra& ta, std::mt19937_64& rng);

} // namespace orbiclan::testing
