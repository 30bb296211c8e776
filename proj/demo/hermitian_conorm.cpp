// Conorm of C_{0,4} over GF(9) to the Hermitian curve y^3 + y = x^4.
//
// Prints both codes, their hulls, and how the duality assumption fares.

#include <iostream>

#include "agchull/conorm_codes.hpp"

int main() {
  using namespace agchull;
  const auto ext = Extension::hermitian(3);
  const auto& f = ext->base_field();
  const int n = 8, a = 0, b = 4;

  const auto inst = build_conorm_code(f, n, a, b, ext);
  std::cout << ext->describe() << ", genus " << inst.genus << ", deg Diff " << inst.ramification.different_degree << "\n";
  std::cout << "C : n=" << inst.base.length() << " k=" << inst.base.dimension()
            << " hull=" << hull_basis_intersect(inst.base).rows() << "  G = " << inst.base.G.to_string() << "\n";
  std::cout << "C': n=" << inst.code.length() << " k=" << inst.code.dimension()
            << " hull=" << hull_basis_intersect(inst.code).rows() << "  deg G' = " << divisor_degree(inst.g_prime) << "\n";

  const auto [g0, g1] = cab_gcd_coefficients(n, a, b);
  const auto basis = rr_basis_conorm_two_point(*ext, g0, g1);
  std::cout << "L(Con gcd(G,H)) has dimension " << basis.dimension << ":";
  for (const auto& fn : basis.functions) std::cout << " " << fn.to_string();
  std::cout << "\n";

  const auto eq5 = check_eq5(inst);
  std::cout << "(mn - sum m_P)/t = " << eq5.necessary_lhs.to_string() << " vs deg Diff = " << eq5.deg_diff
            << "; Con(C^perp) == Con(C)^perp: " << (eq5.empirical_equal ? "yes" : "no") << "\n";
}
