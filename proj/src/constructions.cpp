#include "hlr3/constructions.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace hlr3 {

namespace {

ConditionResult synthetic_failure(std::string name, std::string lhs, std::string rhs) {
  ConditionResult r{.name = std::move(name)};
  r.passed = false;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

VerificationReport single_condition_report(ConditionResult r) {
  VerificationReport report;
  report.conditions.push_back(std::move(r));
  return report;
}

Vec bracket_slice(const Tensor& bracket, std::size_t d, std::size_t i, std::size_t j,
                  std::size_t k) {
  Vec v(d);
  for (std::size_t l = 0; l < d; ++l) v[l] = bracket.at({i, j, k, l});
  return v;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(a.rows() + r, a.cols() + c) = b.at(r, c);
  return out;
}

}  // namespace

PreconditionError::PreconditionError(const std::string& message, VerificationReport report)
    : std::runtime_error(message + "\n" + report.summary()), report_(std::move(report)) {}

Anchor zero_anchor(std::size_t l_dim, std::size_t a_dim) {
  Anchor anchor;
  anchor.rho.assign(l_dim, std::vector<Matrix>(l_dim, Matrix(a_dim, a_dim)));
  return anchor;
}

HLR3Algebra embed_hom_lie3(const HomLie3& l3) {
  const std::size_t d = l3.dim;
  if (d == 0) throw std::invalid_argument("carrier dimension must be positive");
  if (l3.bracket.shape != std::vector<std::size_t>{d, d, d, d}) {
    throw std::invalid_argument("bracket tensor has wrong shape");
  }
  if (l3.alpha.rows() != d || l3.alpha.cols() != d) {
    throw std::invalid_argument("alpha has wrong shape");
  }
  HLR3Algebra out;
  out.A.dim = 1;
  out.A.mult = Tensor({1, 1, 1});
  out.A.mult.at({0, 0, 0}) = 1;
  out.A.unit = Vec{Rat(1)};
  out.A.phi = Matrix::identity(1);
  out.L_dim = d;
  out.a_action.dim = d;
  out.a_action.action = Tensor({1, d, d});
  for (std::size_t j = 0; j < d; ++j) out.a_action.action.at({0, j, j}) = 1;
  out.bracket = l3.bracket;
  out.alpha = l3.alpha;
  out.anchor = zero_anchor(d, 1);
  return out;
}

HLR3Algebra from_3_lie_rinehart(const HLR3Algebra& alg) {
  validate_shapes(alg);
  if (!alg.alpha.is_identity()) {
    throw PreconditionError(
        "input twist alpha is not the identity",
        single_condition_report(synthetic_failure("identity_twists", matrix_to_string(alg.alpha),
                                                  matrix_to_string(Matrix::identity(alg.L_dim)))));
  }
  if (!alg.A.phi.is_identity()) {
    throw PreconditionError(
        "input twist phi is not the identity",
        single_condition_report(synthetic_failure("identity_twists", matrix_to_string(alg.A.phi),
                                                  matrix_to_string(Matrix::identity(alg.A.dim)))));
  }
  VerificationReport report = verify_all(alg);
  if (!report.passed()) throw PreconditionError("input failed verification", report);
  return alg;
}

HLR3Algebra yau_twist(const HLR3Algebra& alg, const Matrix& phi_new, const Matrix& alpha_new) {
  validate_shapes(alg);
  VerificationReport morph = verify_morphism(alg, alg, HLR3Morphism{phi_new, alpha_new});
  if (!morph.passed()) {
    throw PreconditionError("twist pair is not a self-morphism", morph);
  }
  HLR3Algebra out = alg;
  out.A.phi = phi_new * alg.A.phi;
  out.alpha = alpha_new * alg.alpha;
  const std::size_t d = alg.L_dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Vec twisted = alpha_new.apply(bracket_slice(alg.bracket, d, i, j, k));
        for (std::size_t l = 0; l < d; ++l) out.bracket.at({i, j, k, l}) = twisted[l];
      }
      out.anchor.rho[i][j] = phi_new * alg.anchor.rho[i][j];
    }
  VerificationReport check = verify_all(out);
  if (!check.passed()) throw PreconditionError("twisted output failed verification", check);
  return out;
}

HLR3Algebra tensor_extension(const HomLie3& l3, const CommAlgebra& a, const Anchor& rho) {
  HLR3Algebra embedded = embed_hom_lie3(l3);
  VerificationReport base = verify_all(embedded);
  if (!base.passed()) throw PreconditionError("input algebra failed verification", base);
  const std::size_t dL = l3.dim;
  const std::size_t dA = a.dim;
  if (rho.rho.size() != dL) throw std::invalid_argument("anchor has wrong shape");
  for (const auto& row : rho.rho) {
    if (row.size() != dL) throw std::invalid_argument("anchor has wrong shape");
    for (const auto& m : row) {
      if (m.rows() != dA || m.cols() != dA) {
        throw std::invalid_argument("anchor entry has wrong shape");
      }
    }
  }
  VerificationReport axioms = check_anchor_axioms(a, dL, l3.bracket, l3.alpha, rho);
  if (!axioms.passed()) {
    throw PreconditionError("anchor candidate failed the representation axioms", axioms);
  }

  const std::size_t n = dA * dL;
  auto idx = [&](std::size_t p, std::size_t i) { return p * dL + i; };

  std::vector<Vec> a_basis;
  for (std::size_t p = 0; p < dA; ++p) a_basis.push_back(unit_vec(dA, p));
  std::vector<std::vector<Vec>> prod2(dA, std::vector<Vec>(dA));
  for (std::size_t p = 0; p < dA; ++p)
    for (std::size_t q = 0; q < dA; ++q) prod2[p][q] = a.multiply(a_basis[p], a_basis[q]);
  std::vector<Vec> alpha_col;
  for (std::size_t i = 0; i < dL; ++i) alpha_col.push_back(l3.alpha.apply(unit_vec(dL, i)));

  HLR3Algebra out;
  out.A = a;
  out.L_dim = n;
  out.a_action.dim = n;
  out.a_action.action = Tensor({dA, n, n});
  for (std::size_t q = 0; q < dA; ++q)
    for (std::size_t p = 0; p < dA; ++p)
      for (std::size_t r = 0; r < dA; ++r) {
        const Rat& c = a.mult.at({q, p, r});
        if (c == 0) continue;
        for (std::size_t i = 0; i < dL; ++i) out.a_action.action.at({q, idx(p, i), idx(r, i)}) = c;
      }

  out.bracket = Tensor({n, n, n, n});
  auto add_tensor_term = [&](std::size_t I, std::size_t J, std::size_t K, const Vec& a_part,
                             const Vec& l_part) {
    for (std::size_t s = 0; s < dA; ++s) {
      if (a_part[s] == 0) continue;
      for (std::size_t l = 0; l < dL; ++l) {
        if (l_part[l] == 0) continue;
        out.bracket.at({I, J, K, idx(s, l)}) += a_part[s] * l_part[l];
      }
    }
  };
  for (std::size_t p = 0; p < dA; ++p)
    for (std::size_t q = 0; q < dA; ++q)
      for (std::size_t r = 0; r < dA; ++r) {
        Vec phi3 = a.phi.apply(a.multiply(prod2[p][q], a_basis[r]));
        Vec phi_pq = a.phi.apply(prod2[p][q]);
        Vec phi_qr = a.phi.apply(prod2[q][r]);
        Vec phi_rp = a.phi.apply(prod2[r][p]);
        for (std::size_t i = 0; i < dL; ++i)
          for (std::size_t j = 0; j < dL; ++j)
            for (std::size_t k = 0; k < dL; ++k) {
              const std::size_t I = idx(p, i), J = idx(q, j), K = idx(r, k);
              add_tensor_term(I, J, K, phi3, bracket_slice(l3.bracket, dL, i, j, k));
              add_tensor_term(I, J, K, a.multiply(phi_pq, rho.rho[i][j].apply(a_basis[r])),
                              alpha_col[k]);
              add_tensor_term(I, J, K, a.multiply(phi_qr, rho.rho[j][k].apply(a_basis[p])),
                              alpha_col[i]);
              add_tensor_term(I, J, K, a.multiply(phi_rp, rho.rho[k][i].apply(a_basis[q])),
                              alpha_col[j]);
            }
      }

  out.alpha = Matrix(n, n);
  for (std::size_t p = 0; p < dA; ++p)
    for (std::size_t i = 0; i < dL; ++i)
      for (std::size_t s = 0; s < dA; ++s)
        for (std::size_t l = 0; l < dL; ++l) {
          out.alpha.at(idx(s, l), idx(p, i)) = a.phi.at(s, p) * l3.alpha.at(l, i);
        }

  out.anchor = zero_anchor(n, dA);
  for (std::size_t p = 0; p < dA; ++p)
    for (std::size_t i = 0; i < dL; ++i)
      for (std::size_t q = 0; q < dA; ++q)
        for (std::size_t j = 0; j < dL; ++j) {
          out.anchor.rho[idx(p, i)][idx(q, j)] =
              a.mult_operator(a.phi.apply(prod2[p][q])) * rho.rho[i][j];
        }

  VerificationReport check = verify_all(out);
  if (!check.passed()) {
    throw PreconditionError("tensor extension output failed verification", check);
  }
  return out;
}

HLR3Algebra fiber_product(const HLR3Algebra& alg_l, const HLR3Algebra& alg_m) {
  VerificationReport left = verify_all(alg_l);
  if (!left.passed()) throw PreconditionError("left input failed verification", left);
  VerificationReport right = verify_all(alg_m);
  if (!right.passed()) throw PreconditionError("right input failed verification", right);
  if (alg_l.A.dim != alg_m.A.dim || !(alg_l.A.mult == alg_m.A.mult) ||
      alg_l.A.unit != alg_m.A.unit || !(alg_l.A.phi == alg_m.A.phi)) {
    throw std::invalid_argument("fiber product requires a shared base algebra");
  }
  if (alg_l.L_dim != alg_m.L_dim) {
    throw std::invalid_argument(
        "fiber product requires equal carrier dimensions so anchor columns can be matched");
  }
  const std::size_t d = alg_l.L_dim;
  const std::size_t dA = alg_l.A.dim;

  Matrix constraints(d * dA * dA, 2 * d);
  for (std::size_t col = 0; col < d; ++col)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t p = 0; p < dA; ++p)
        for (std::size_t q = 0; q < dA; ++q) {
          const std::size_t row = (j * dA + p) * dA + q;
          constraints.at(row, col) = alg_l.anchor.rho[col][j].at(p, q);
          constraints.at(row, d + col) = -alg_m.anchor.rho[col][j].at(p, q);
        }
  SubspaceBasis carrier = kernel(constraints);
  const std::size_t n = carrier.dim();
  if (n == 0) {
    throw PreconditionError(
        "fiber product carrier is empty",
        single_condition_report(synthetic_failure("carrier_nonempty", "0", "positive")));
  }

  auto l_part = [&](const Vec& v) { return Vec(v.begin(), v.begin() + d); };
  auto m_part = [&](const Vec& v) { return Vec(v.begin() + d, v.end()); };
  auto coords = [&](const Vec& v, const char* what) {
    auto c = express_in_basis(carrier, v);
    if (!c) {
      throw ContainmentError(std::string("fiber product carrier is not closed under the ") +
                                 what + ": " + vec_to_string(v),
                             v);
    }
    return *c;
  };

  HLR3Algebra out;
  out.A = alg_l.A;
  out.L_dim = n;
  out.a_action.dim = n;
  out.a_action.action = Tensor({dA, n, n});
  for (std::size_t p = 0; p < dA; ++p) {
    Vec ap = unit_vec(dA, p);
    for (std::size_t r = 0; r < n; ++r) {
      const Vec& v = carrier.vectors[r];
      Vec image = alg_l.act(ap, l_part(v));
      Vec image_m = alg_m.act(ap, m_part(v));
      image.insert(image.end(), image_m.begin(), image_m.end());
      Vec c = coords(image, "action");
      for (std::size_t s = 0; s < n; ++s) out.a_action.action.at({p, r, s}) = c[s];
    }
  }

  out.bracket = Tensor({n, n, n, n});
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        const Vec& u = carrier.vectors[r];
        const Vec& v = carrier.vectors[s];
        const Vec& w = carrier.vectors[t];
        Vec image = alg_l.bracket_of(l_part(u), l_part(v), l_part(w));
        Vec image_m = alg_m.bracket_of(m_part(u), m_part(v), m_part(w));
        image.insert(image.end(), image_m.begin(), image_m.end());
        Vec c = coords(image, "bracket");
        for (std::size_t o = 0; o < n; ++o) out.bracket.at({r, s, t, o}) = c[o];
      }

  out.alpha = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Vec& v = carrier.vectors[r];
    Vec image = alg_l.alpha.apply(l_part(v));
    Vec image_m = alg_m.alpha.apply(m_part(v));
    image.insert(image.end(), image_m.begin(), image_m.end());
    Vec c = coords(image, "twist");
    for (std::size_t s = 0; s < n; ++s) out.alpha.at(s, r) = c[s];
  }

  out.anchor = zero_anchor(n, dA);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      Matrix via_l = alg_l.anchor.evaluate(l_part(carrier.vectors[r]), l_part(carrier.vectors[s]));
      Matrix via_m = alg_m.anchor.evaluate(m_part(carrier.vectors[r]), m_part(carrier.vectors[s]));
      if (!(via_l == via_m)) {
        throw PreconditionError(
            "fiber product anchor is not well defined on the carrier",
            single_condition_report(synthetic_failure("anchor_well_defined",
                                                      matrix_to_string(via_l),
                                                      matrix_to_string(via_m))));
      }
      out.anchor.rho[r][s] = via_l;
    }

  VerificationReport check = verify_all(out);
  if (!check.passed()) throw PreconditionError("fiber product failed verification", check);
  return out;
}

HLR3Algebra semidirect_product(const HLR3Algebra& alg) {
  VerificationReport base = verify_all(alg);
  if (!base.passed()) throw PreconditionError("input failed verification", base);
  const std::size_t dL = alg.L_dim;
  const std::size_t dA = alg.A.dim;
  const std::size_t n = dL + dA;

  HLR3Algebra out;
  out.A = alg.A;
  out.L_dim = n;
  out.a_action.dim = n;
  out.a_action.action = Tensor({dA, n, n});
  for (std::size_t q = 0; q < dA; ++q) {
    for (std::size_t j = 0; j < dL; ++j)
      for (std::size_t k = 0; k < dL; ++k) {
        out.a_action.action.at({q, j, k}) = alg.a_action.action.at({q, j, k});
      }
    for (std::size_t p = 0; p < dA; ++p)
      for (std::size_t r = 0; r < dA; ++r) {
        out.a_action.action.at({q, dL + p, dL + r}) = alg.A.mult.at({q, p, r});
      }
  }

  out.bracket = Tensor({n, n, n, n});
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) {
      for (std::size_t k = 0; k < dL; ++k)
        for (std::size_t l = 0; l < dL; ++l) {
          out.bracket.at({i, j, k, l}) = alg.bracket.at({i, j, k, l});
        }
      for (std::size_t r = 0; r < dA; ++r)
        for (std::size_t s = 0; s < dA; ++s) {
          const Rat& c = alg.anchor.rho[i][j].at(s, r);
          if (c == 0) continue;
          out.bracket.at({i, j, dL + r, dL + s}) = c;
          out.bracket.at({i, dL + r, j, dL + s}) = -c;
          out.bracket.at({dL + r, i, j, dL + s}) = c;
        }
    }

  out.alpha = block_diag(alg.alpha, alg.A.phi);

  out.anchor = zero_anchor(n, dA);
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) out.anchor.rho[i][j] = alg.anchor.rho[i][j];

  VerificationReport check = verify_all(out);
  if (!check.passed()) throw PreconditionError("semidirect product failed verification", check);
  return out;
}

HLR3Algebra module_semidirect_sum(const HLR3Algebra& alg, const LeftModule& mod) {
  validate_shapes(alg);
  const std::size_t dL = alg.L_dim;
  const std::size_t dA = alg.A.dim;
  const std::size_t dM = mod.dim;
  if (mod.a_action.dim != dM || mod.a_action.action.shape != std::vector<std::size_t>{dA, dM, dM}) {
    throw std::invalid_argument("module action tensor has wrong shape");
  }
  if (mod.beta.rows() != dM || mod.beta.cols() != dM) {
    throw std::invalid_argument("beta has wrong shape");
  }
  if (mod.psi.size() != dL) throw std::invalid_argument("psi table has wrong shape");
  for (const auto& row : mod.psi) {
    if (row.size() != dL) throw std::invalid_argument("psi table has wrong shape");
    for (const auto& m : row) {
      if (m.rows() != dM || m.cols() != dM) throw std::invalid_argument("psi entry has wrong shape");
    }
  }
  const std::size_t n = dL + dM;

  HLR3Algebra out;
  out.A = alg.A;
  out.L_dim = n;
  out.a_action.dim = n;
  out.a_action.action = Tensor({dA, n, n});
  for (std::size_t q = 0; q < dA; ++q) {
    for (std::size_t j = 0; j < dL; ++j)
      for (std::size_t k = 0; k < dL; ++k) {
        out.a_action.action.at({q, j, k}) = alg.a_action.action.at({q, j, k});
      }
    for (std::size_t s = 0; s < dM; ++s)
      for (std::size_t u = 0; u < dM; ++u) {
        out.a_action.action.at({q, dL + s, dL + u}) = mod.a_action.action.at({q, s, u});
      }
  }

  out.bracket = Tensor({n, n, n, n});
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) {
      for (std::size_t k = 0; k < dL; ++k)
        for (std::size_t l = 0; l < dL; ++l) {
          out.bracket.at({i, j, k, l}) = alg.bracket.at({i, j, k, l});
        }
      for (std::size_t s = 0; s < dM; ++s)
        for (std::size_t u = 0; u < dM; ++u) {
          const Rat& c = mod.psi[i][j].at(u, s);
          if (c == 0) continue;
          out.bracket.at({i, j, dL + s, dL + u}) = c;
          out.bracket.at({i, dL + s, j, dL + u}) = -c;
          out.bracket.at({dL + s, i, j, dL + u}) = c;
        }
    }

  out.alpha = block_diag(alg.alpha, mod.beta);

  out.anchor = zero_anchor(n, dA);
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) out.anchor.rho[i][j] = alg.anchor.rho[i][j];

  return out;
}

std::vector<Matrix> derivation_space(const CommAlgebra& a) {
  const std::size_t d = a.dim;
  std::vector<Vec> a_basis;
  for (std::size_t p = 0; p < d; ++p) a_basis.push_back(unit_vec(d, p));
  std::vector<Matrix> mult_phi;
  for (std::size_t p = 0; p < d; ++p) mult_phi.push_back(a.mult_operator(a.phi.apply(a_basis[p])));

  Matrix system(d * d * d, d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      Vec prod = a.multiply(a_basis[p], a_basis[q]);
      for (std::size_t r = 0; r < d; ++r) {
        const std::size_t row = (p * d + q) * d + r;
        for (std::size_t v = 0; v < d; ++v) system.at(row, r * d + v) += prod[v];
        for (std::size_t u = 0; u < d; ++u) {
          system.at(row, u * d + q) -= mult_phi[p].at(r, u);
          system.at(row, u * d + p) -= mult_phi[q].at(r, u);
        }
      }
    }
  SubspaceBasis sols = kernel(system);
  std::vector<Matrix> out;
  for (const Vec& v : sols.vectors) {
    Matrix m(d, d);
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t w = 0; w < d; ++w) m.at(u, w) = v[u * d + w];
    out.push_back(m);
  }
  return out;
}

Anchor find_admissible_anchor(const CommAlgebra& a, std::size_t l_dim, const Tensor& bracket,
                              const Matrix& alpha) {
  const std::size_t dA = a.dim;
  std::vector<Matrix> ders = derivation_space(a);
  const std::size_t nd = ders.size();
  if (nd == 0 || l_dim < 2) return zero_anchor(l_dim, dA);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < l_dim; ++i)
    for (std::size_t j = i + 1; j < l_dim; ++j) pairs.emplace_back(i, j);
  const std::size_t unknowns = pairs.size() * nd;

  std::vector<Matrix> ders_phi;
  std::vector<Matrix> phi_ders;
  for (const Matrix& dmat : ders) {
    ders_phi.push_back(dmat * a.phi);
    phi_ders.push_back(a.phi * dmat);
  }
  std::vector<Vec> alpha_col;
  for (std::size_t i = 0; i < l_dim; ++i) alpha_col.push_back(alpha.apply(unit_vec(l_dim, i)));

  // Skew coefficient of the unknown matrix P_{st} in rho(u, v).
  auto pair_coeff = [&](const Vec& u, const Vec& v, std::size_t s, std::size_t t) -> Rat {
    return u[s] * v[t] - u[t] * v[s];
  };

  std::vector<Vec> rows;
  auto add_matrix_rows = [&](const std::vector<Rat>& pair_coeffs,
                             const std::vector<Matrix>& left_table, int sign_extra,
                             std::size_t extra_pair, const std::vector<Matrix>& extra_table) {
    for (std::size_t r = 0; r < dA; ++r)
      for (std::size_t w = 0; w < dA; ++w) {
        Vec row(unknowns);
        bool nonzero = false;
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
          if (pair_coeffs[pi] == 0 && (sign_extra == 0 || pi != extra_pair)) continue;
          for (std::size_t c = 0; c < nd; ++c) {
            Rat coeff = pair_coeffs[pi] * left_table[c].at(r, w);
            if (sign_extra != 0 && pi == extra_pair) {
              coeff += Rat(sign_extra) * extra_table[c].at(r, w);
            }
            if (coeff != 0) {
              row[pi * nd + c] = coeff;
              nonzero = true;
            }
          }
        }
        if (nonzero) rows.push_back(std::move(row));
      }
  };

  // rho(bracket image, alpha column) composed with phi must vanish.
  for (std::size_t i = 0; i < l_dim; ++i)
    for (std::size_t j = 0; j < l_dim; ++j)
      for (std::size_t k = 0; k < l_dim; ++k) {
        Vec b(l_dim);
        for (std::size_t m = 0; m < l_dim; ++m) b[m] = bracket.at({i, j, k, m});
        if (vec_is_zero(b)) continue;
        for (std::size_t l = 0; l < l_dim; ++l) {
          std::vector<Rat> coeffs(pairs.size());
          for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
            coeffs[pi] = pair_coeff(b, alpha_col[l], pairs[pi].first, pairs[pi].second);
          }
          add_matrix_rows(coeffs, ders_phi, 0, 0, ders_phi);
        }
      }

  // Equivariance: rho(alpha e_i, alpha e_j) phi - phi rho(e_i, e_j) = 0.
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    auto [i, j] = pairs[pi];
    std::vector<Rat> coeffs(pairs.size());
    for (std::size_t pj = 0; pj < pairs.size(); ++pj) {
      coeffs[pj] = pair_coeff(alpha_col[i], alpha_col[j], pairs[pj].first, pairs[pj].second);
    }
    add_matrix_rows(coeffs, ders_phi, -1, pi, phi_ders);
  }

  Matrix system(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) system.at(r, c) = rows[r][c];
  SubspaceBasis sols = rows.empty() ? kernel(Matrix(1, unknowns)) : kernel(system);

  for (const Vec& sol : sols.vectors) {
    Anchor cand = zero_anchor(l_dim, dA);
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      Matrix value(dA, dA);
      for (std::size_t c = 0; c < nd; ++c) {
        if (sol[pi * nd + c] == 0) continue;
        value = value + ders[c].scaled(sol[pi * nd + c]);
      }
      cand.rho[pairs[pi].first][pairs[pi].second] = value;
      cand.rho[pairs[pi].second][pairs[pi].first] = value.scaled(Rat(-1));
    }
    if (check_anchor_axioms(a, l_dim, bracket, alpha, cand).passed()) return cand;
  }
  return zero_anchor(l_dim, dA);
}

}  // namespace hlr3
