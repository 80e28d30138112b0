#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lowlying/arith.hpp"
#include "lowlying/newforms.hpp"

namespace lowlying::arith {

// Selects an admissible family of twists. `heart` is consulted only for
// self-CM forms, `diamond` only for non-self-dual forms.
struct FamilySelector {
  FamilyKind kind = FamilyKind::principal;
  int heart = 1;              // +1 or -1
  std::int64_t diamond = 1;   // 1 <= diamond < M
  std::int64_t x_max = 1000;  // discriminant bound X
};

/// Default selector matching the form's kind (heart = +1, diamond = 1).
FamilySelector default_selector(const newforms::Newform& form, std::int64_t x_max);

/// Membership of D in the family. Discriminants sharing a factor with the
/// level are never admissible. Throws std::invalid_argument if the selector
/// kind does not match the form, std::logic_error if a principal form has no
/// calibrated epsilon.
bool is_admissible(const newforms::Newform& form, const FundamentalDiscriminant& d,
                   const FamilySelector& sel);

/// All admissible D <= sel.x_max, ascending.
std::vector<FundamentalDiscriminant> admissible_discriminants(const newforms::Newform& form,
                                                              const FamilySelector& sel);

/// epsilon_f * chi_f(D) * psi_D(-M). Throws std::logic_error without a
/// calibrated epsilon and std::invalid_argument if gcd(D, M) > 1.
std::complex<double> sign_of_functional_equation(const newforms::Newform& form,
                                                 const FundamentalDiscriminant& d);

}  // namespace lowlying::arith
