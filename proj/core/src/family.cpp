#include "lowlying/family.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lowlying::arith {

FamilySelector default_selector(const newforms::Newform& form, std::int64_t x_max) {
  FamilySelector sel;
  sel.kind = form.kind;
  sel.x_max = x_max;
  return sel;
}

bool is_admissible(const newforms::Newform& form, const FundamentalDiscriminant& d,
                   const FamilySelector& sel) {
  if (sel.kind != form.kind) {
    throw std::invalid_argument(std::string("family selector kind ") + to_string(sel.kind) +
                                " does not match form " + form.label);
  }
  if (gcd(d.value(), form.level) != 1) return false;
  switch (sel.kind) {
    case FamilyKind::principal: {
      if (!form.epsilon) throw std::logic_error(form.label + ": epsilon_f not calibrated");
      const double eps = form.epsilon->real();
      return kronecker(d.value(), form.level) * eps > 0.0;
    }
    case FamilyKind::self_cm:
      return kronecker(d.value(), form.level) == sel.heart;
    case FamilyKind::non_self_dual:
      return d.value() % form.level == sel.diamond;
  }
  return false;
}

std::vector<FundamentalDiscriminant> admissible_discriminants(const newforms::Newform& form,
                                                              const FamilySelector& sel) {
  std::vector<FundamentalDiscriminant> out;
  for (const auto& d : fundamental_discriminants(sel.x_max)) {
    if (is_admissible(form, d, sel)) out.push_back(d);
  }
  return out;
}

std::complex<double> sign_of_functional_equation(const newforms::Newform& form,
                                                 const FundamentalDiscriminant& d) {
  if (!form.epsilon) throw std::logic_error(form.label + ": epsilon_f not calibrated");
  if (gcd(d.value(), form.level) != 1) {
    throw std::invalid_argument(form.label + ": D = " + std::to_string(d.value()) +
                                " shares a factor with the level");
  }
  const std::complex<double> chi = form.character(d.value());
  return *form.epsilon * chi * static_cast<double>(kronecker(d.value(), -form.level));
}

}  // namespace lowlying::arith
