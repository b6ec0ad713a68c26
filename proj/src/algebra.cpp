#include "hlr3/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace hlr3 {

namespace {

std::string tuple_to_string(const std::vector<std::size_t>& idx) {
  std::string out = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(idx[i]);
  }
  out += ")";
  return out;
}

void fail(ConditionResult& r, std::vector<std::size_t> idx, std::string lhs, std::string rhs) {
  r.passed = false;
  r.indices = std::move(idx);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, n); }

}  // namespace

Vec CommAlgebra::multiply(const Vec& a, const Vec& b) const {
  if (a.size() != dim || b.size() != dim) {
    throw std::invalid_argument("algebra multiply dimension mismatch");
  }
  Vec out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j] == 0) continue;
      Rat coeff = a[i] * b[j];
      for (std::size_t k = 0; k < dim; ++k) out[k] += coeff * mult.at({i, j, k});
    }
  }
  return out;
}

Matrix CommAlgebra::mult_operator(const Vec& a) const {
  if (a.size() != dim) throw std::invalid_argument("algebra operator dimension mismatch");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t r = 0; r < dim; ++r) m.at(r, p) += a[i] * mult.at({i, p, r});
    }
  }
  return m;
}

bool CommAlgebra::regular() const { return is_invertible(phi); }

Vec AModuleStructure::act(const Vec& a, const Vec& x) const {
  if (x.size() != dim || action.shape.size() != 3 || a.size() != action.shape[0]) {
    throw std::invalid_argument("module action dimension mismatch");
  }
  Vec out(dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (x[j] == 0) continue;
      Rat coeff = a[i] * x[j];
      for (std::size_t k = 0; k < dim; ++k) out[k] += coeff * action.at({i, j, k});
    }
  }
  return out;
}

Matrix AModuleStructure::action_operator(const Vec& a) const {
  if (action.shape.size() != 3 || a.size() != action.shape[0]) {
    throw std::invalid_argument("module operator dimension mismatch");
  }
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t r = 0; r < dim; ++r) m.at(r, j) += a[i] * action.at({i, j, r});
    }
  }
  return m;
}

Matrix pair_eval(const std::vector<std::vector<Matrix>>& table, const Vec& x, const Vec& y) {
  if (table.empty()) throw std::invalid_argument("pair table has no entries");
  if (x.size() != table.size() || y.size() != table.size()) {
    throw std::invalid_argument("pair evaluation dimension mismatch");
  }
  Matrix out(table[0][0].rows(), table[0][0].cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (y[j] == 0) continue;
      out = out + table[i][j].scaled(x[i] * y[j]);
    }
  }
  return out;
}

Matrix Anchor::evaluate(const Vec& x, const Vec& y) const { return pair_eval(rho, x, y); }

Matrix LeftModule::psi_of(const Vec& x, const Vec& y) const { return pair_eval(psi, x, y); }

Vec HLR3Algebra::bracket_of(const Vec& x, const Vec& y, const Vec& z) const {
  if (x.size() != L_dim || y.size() != L_dim || z.size() != L_dim) {
    throw std::invalid_argument("bracket dimension mismatch");
  }
  Vec out(L_dim);
  for (std::size_t i = 0; i < L_dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < L_dim; ++j) {
      if (y[j] == 0) continue;
      Rat xy = x[i] * y[j];
      for (std::size_t k = 0; k < L_dim; ++k) {
        if (z[k] == 0) continue;
        Rat coeff = xy * z[k];
        for (std::size_t l = 0; l < L_dim; ++l) out[l] += coeff * bracket.at({i, j, k, l});
      }
    }
  }
  return out;
}

Matrix HLR3Algebra::anchor_of(const Vec& x, const Vec& y) const { return anchor.evaluate(x, y); }

Vec HLR3Algebra::act(const Vec& a, const Vec& x) const { return a_action.act(a, x); }

bool HLR3Algebra::regular() const { return A.regular() && is_invertible(alpha); }

std::string ConditionResult::describe() const {
  if (passed) return name + ": pass";
  std::string out = name + ": fail";
  if (!indices.empty()) out += " at basis tuple " + tuple_to_string(indices);
  out += "; lhs = " + lhs + ", rhs = " + rhs;
  return out;
}

bool VerificationReport::passed() const {
  for (const auto& c : conditions) {
    if (!c.passed) return false;
  }
  return true;
}

const ConditionResult* VerificationReport::first_failure() const {
  for (const auto& c : conditions) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

std::string VerificationReport::summary() const {
  std::string out;
  for (const auto& c : conditions) {
    out += c.describe();
    out += "\n";
  }
  return out;
}

Vec unit_vec(std::size_t dim, std::size_t i) {
  if (i >= dim) throw std::out_of_range("basis index out of range");
  Vec v(dim);
  v[i] = 1;
  return v;
}

void validate_shapes(const HLR3Algebra& alg) {
  const std::size_t dA = alg.A.dim;
  const std::size_t dL = alg.L_dim;
  if (dA == 0 || dL == 0) throw std::invalid_argument("algebra dimensions must be positive");
  if (alg.A.mult.shape != std::vector<std::size_t>{dA, dA, dA}) {
    throw std::invalid_argument("algebra multiplication tensor has wrong shape");
  }
  if (alg.A.unit.size() != dA) throw std::invalid_argument("algebra unit has wrong length");
  if (alg.A.phi.rows() != dA || alg.A.phi.cols() != dA) {
    throw std::invalid_argument("phi has wrong shape");
  }
  if (alg.a_action.dim != dL ||
      alg.a_action.action.shape != std::vector<std::size_t>{dA, dL, dL}) {
    throw std::invalid_argument("action tensor has wrong shape");
  }
  if (alg.bracket.shape != std::vector<std::size_t>{dL, dL, dL, dL}) {
    throw std::invalid_argument("bracket tensor has wrong shape");
  }
  if (alg.alpha.rows() != dL || alg.alpha.cols() != dL) {
    throw std::invalid_argument("alpha has wrong shape");
  }
  if (alg.anchor.rho.size() != dL) throw std::invalid_argument("anchor has wrong shape");
  for (const auto& row : alg.anchor.rho) {
    if (row.size() != dL) throw std::invalid_argument("anchor has wrong shape");
    for (const auto& m : row) {
      if (m.rows() != dA || m.cols() != dA) {
        throw std::invalid_argument("anchor entry has wrong shape");
      }
    }
  }
}

namespace {

/// Cached basis images used by several conditions.
struct Workspace {
  const HLR3Algebra& alg;
  std::size_t dA;
  std::size_t dL;
  std::vector<Vec> a_basis;
  std::vector<Vec> l_basis;
  std::vector<Vec> alpha_l;
  std::vector<Vec> phi_a;
  std::vector<std::vector<std::vector<Vec>>> btab;

  explicit Workspace(const HLR3Algebra& a) : alg(a), dA(a.A.dim), dL(a.L_dim) {
    for (std::size_t i = 0; i < dA; ++i) a_basis.push_back(unit_vec(dA, i));
    for (std::size_t i = 0; i < dL; ++i) l_basis.push_back(unit_vec(dL, i));
    for (std::size_t i = 0; i < dL; ++i) alpha_l.push_back(a.alpha.apply(l_basis[i]));
    for (std::size_t i = 0; i < dA; ++i) phi_a.push_back(a.A.phi.apply(a_basis[i]));
    btab.assign(dL, std::vector<std::vector<Vec>>(dL, std::vector<Vec>(dL)));
    for (std::size_t i = 0; i < dL; ++i) {
      for (std::size_t j = 0; j < dL; ++j) {
        for (std::size_t k = 0; k < dL; ++k) {
          Vec v(dL);
          for (std::size_t l = 0; l < dL; ++l) v[l] = a.bracket.at({i, j, k, l});
          btab[i][j][k] = std::move(v);
        }
      }
    }
  }
};

ConditionResult check_algebra_comm(const Workspace& w) {
  ConditionResult r{.name = "algebra_comm"};
  for (std::size_t i = 0; i < w.dA; ++i) {
    for (std::size_t j = 0; j < w.dA; ++j) {
      Vec lhs = w.alg.A.multiply(w.a_basis[i], w.a_basis[j]);
      Vec rhs = w.alg.A.multiply(w.a_basis[j], w.a_basis[i]);
      if (lhs != rhs) {
        fail(r, {i, j}, vec_to_string(lhs), vec_to_string(rhs));
        return r;
      }
    }
  }
  return r;
}

ConditionResult check_algebra_assoc(const Workspace& w) {
  ConditionResult r{.name = "algebra_assoc"};
  for (std::size_t i = 0; i < w.dA; ++i) {
    for (std::size_t j = 0; j < w.dA; ++j) {
      for (std::size_t k = 0; k < w.dA; ++k) {
        Vec lhs = w.alg.A.multiply(w.alg.A.multiply(w.a_basis[i], w.a_basis[j]), w.a_basis[k]);
        Vec rhs = w.alg.A.multiply(w.a_basis[i], w.alg.A.multiply(w.a_basis[j], w.a_basis[k]));
        if (lhs != rhs) {
          fail(r, {i, j, k}, vec_to_string(lhs), vec_to_string(rhs));
          return r;
        }
      }
    }
  }
  return r;
}

ConditionResult check_algebra_unit(const Workspace& w) {
  ConditionResult r{.name = "algebra_unit"};
  for (std::size_t i = 0; i < w.dA; ++i) {
    Vec left = w.alg.A.multiply(w.alg.A.unit, w.a_basis[i]);
    if (left != w.a_basis[i]) {
      fail(r, {i}, vec_to_string(left), vec_to_string(w.a_basis[i]));
      return r;
    }
    Vec right = w.alg.A.multiply(w.a_basis[i], w.alg.A.unit);
    if (right != w.a_basis[i]) {
      fail(r, {i}, vec_to_string(right), vec_to_string(w.a_basis[i]));
      return r;
    }
  }
  return r;
}

ConditionResult check_phi_endomorphism(const Workspace& w) {
  ConditionResult r{.name = "phi_endomorphism"};
  for (std::size_t i = 0; i < w.dA; ++i) {
    for (std::size_t j = 0; j < w.dA; ++j) {
      Vec lhs = w.alg.A.phi.apply(w.alg.A.multiply(w.a_basis[i], w.a_basis[j]));
      Vec rhs = w.alg.A.multiply(w.phi_a[i], w.phi_a[j]);
      if (lhs != rhs) {
        fail(r, {i, j}, vec_to_string(lhs), vec_to_string(rhs));
        return r;
      }
    }
  }
  Vec unit_image = w.alg.A.phi.apply(w.alg.A.unit);
  if (unit_image != w.alg.A.unit) {
    fail(r, {}, vec_to_string(unit_image), vec_to_string(w.alg.A.unit));
  }
  return r;
}

}  // namespace

ConditionResult check_module_unit(const CommAlgebra& A, const AModuleStructure& mod,
                                  std::string name) {
  ConditionResult r{.name = std::move(name)};
  for (std::size_t j = 0; j < mod.dim; ++j) {
    Vec e = unit_vec(mod.dim, j);
    Vec got = mod.act(A.unit, e);
    if (got != e) {
      fail(r, {j}, vec_to_string(got), vec_to_string(e));
      return r;
    }
  }
  return r;
}

ConditionResult check_module_assoc(const CommAlgebra& A, const AModuleStructure& mod,
                                   std::string name) {
  ConditionResult r{.name = std::move(name)};
  for (std::size_t i = 0; i < A.dim; ++i) {
    Vec ai = unit_vec(A.dim, i);
    for (std::size_t j = 0; j < A.dim; ++j) {
      Vec aj = unit_vec(A.dim, j);
      Vec prod = A.multiply(ai, aj);
      for (std::size_t k = 0; k < mod.dim; ++k) {
        Vec ek = unit_vec(mod.dim, k);
        Vec lhs = mod.act(prod, ek);
        Vec rhs = mod.act(ai, mod.act(aj, ek));
        if (lhs != rhs) {
          fail(r, {i, j, k}, vec_to_string(lhs), vec_to_string(rhs));
          return r;
        }
      }
    }
  }
  return r;
}

namespace {

ConditionResult check_bracket_skew(const Workspace& w) {
  ConditionResult r{.name = "bracket_skew"};
  for (std::size_t i = 0; i < w.dL; ++i) {
    for (std::size_t j = 0; j < w.dL; ++j) {
      for (std::size_t k = 0; k < w.dL; ++k) {
        const Vec& v = w.btab[i][j][k];
        Vec swap_first = vec_scaled(w.btab[j][i][k], Rat(-1));
        if (v != swap_first) {
          fail(r, {i, j, k}, vec_to_string(v),
               "-[e" + std::to_string(j) + ",e" + std::to_string(i) + ",e" + std::to_string(k) +
                   "] = " + vec_to_string(swap_first));
          return r;
        }
        Vec swap_last = vec_scaled(w.btab[i][k][j], Rat(-1));
        if (v != swap_last) {
          fail(r, {i, j, k}, vec_to_string(v),
               "-[e" + std::to_string(i) + ",e" + std::to_string(k) + ",e" + std::to_string(j) +
                   "] = " + vec_to_string(swap_last));
          return r;
        }
      }
    }
  }
  return r;
}

ConditionResult check_hom_jacobi(const Workspace& w) {
  ConditionResult r{.name = "hom_jacobi"};
  const std::size_t d = w.dL;
  // Contraction tables: each holds [arg1, arg2, arg3] with one slot a plain
  // basis vector e_m and the others alpha images.
  auto table = [&](int slot) {
    std::vector<Vec> t(d * d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t m = 0; m < d; ++m) {
          const Vec& va = slot == 0 ? w.l_basis[m] : w.alpha_l[a];
          const Vec& vb = slot == 1 ? w.l_basis[m] : (slot == 0 ? w.alpha_l[a] : w.alpha_l[b]);
          const Vec& vc = slot == 2 ? w.l_basis[m] : w.alpha_l[b];
          t[(a * d + b) * d + m] = w.alg.bracket_of(va, vb, vc);
        }
    return t;
  };
  std::vector<Vec> t_last = table(2);   // [alpha(e_a), alpha(e_b), e_m]
  std::vector<Vec> t_first = table(0);  // [e_m, alpha(e_a), alpha(e_b)]
  std::vector<Vec> t_mid = table(1);    // [alpha(e_a), e_m, alpha(e_b)]

  auto contract = [&](const std::vector<Vec>& t, std::size_t a, std::size_t b, const Vec& coef) {
    Vec out(d);
    for (std::size_t m = 0; m < d; ++m) {
      if (coef[m] == 0) continue;
      const Vec& base = t[(a * d + b) * d + m];
      for (std::size_t l = 0; l < d; ++l) out[l] += coef[m] * base[l];
    }
    return out;
  };

  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v)
          for (std::size_t z = 0; z < d; ++z) {
            Vec lhs = contract(t_last, x, y, w.btab[u][v][z]);
            Vec rhs = contract(t_first, v, z, w.btab[x][y][u]);
            rhs = vec_add(rhs, contract(t_mid, u, z, w.btab[x][y][v]));
            rhs = vec_add(rhs, contract(t_last, u, v, w.btab[x][y][z]));
            if (lhs != rhs) {
              fail(r, {x, y, u, v, z}, vec_to_string(lhs), vec_to_string(rhs));
              return r;
            }
          }
  return r;
}

ConditionResult check_alpha_multiplicative(const Workspace& w) {
  ConditionResult r{.name = "alpha_multiplicative"};
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j)
      for (std::size_t k = 0; k < w.dL; ++k) {
        Vec lhs = w.alg.alpha.apply(w.btab[i][j][k]);
        Vec rhs = w.alg.bracket_of(w.alpha_l[i], w.alpha_l[j], w.alpha_l[k]);
        if (lhs != rhs) {
          fail(r, {i, j, k}, vec_to_string(lhs), vec_to_string(rhs));
          return r;
        }
      }
  return r;
}

ConditionResult check_alpha_module_compat(const Workspace& w) {
  ConditionResult r{.name = "alpha_module_compat"};
  for (std::size_t p = 0; p < w.dA; ++p)
    for (std::size_t j = 0; j < w.dL; ++j) {
      Vec lhs = w.alg.alpha.apply(w.alg.act(w.a_basis[p], w.l_basis[j]));
      Vec rhs = w.alg.act(w.phi_a[p], w.alpha_l[j]);
      if (lhs != rhs) {
        fail(r, {p, j}, vec_to_string(lhs), vec_to_string(rhs));
        return r;
      }
    }
  return r;
}

ConditionResult check_anchor_skew(const Workspace& w) {
  ConditionResult r{.name = "anchor_skew"};
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j) {
      Matrix lhs = w.alg.anchor.rho[i][j];
      Matrix rhs = w.alg.anchor.rho[j][i].scaled(Rat(-1));
      if (!(lhs == rhs)) {
        fail(r, {i, j}, matrix_to_string(lhs), matrix_to_string(rhs));
        return r;
      }
    }
  return r;
}

ConditionResult check_anchor_derivation(const Workspace& w) {
  ConditionResult r{.name = "anchor_derivation"};
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j) {
      const Matrix& d = w.alg.anchor.rho[i][j];
      for (std::size_t p = 0; p < w.dA; ++p)
        for (std::size_t q = 0; q < w.dA; ++q) {
          Vec lhs = d.apply(w.alg.A.multiply(w.a_basis[p], w.a_basis[q]));
          Vec rhs = vec_add(w.alg.A.multiply(w.phi_a[p], d.apply(w.a_basis[q])),
                            w.alg.A.multiply(w.phi_a[q], d.apply(w.a_basis[p])));
          if (lhs != rhs) {
            fail(r, {i, j, p, q}, vec_to_string(lhs), vec_to_string(rhs));
            return r;
          }
        }
    }
  return r;
}

ConditionResult check_anchor_equivariance(const Workspace& w) {
  ConditionResult r{.name = "anchor_equivariance"};
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j) {
      Matrix lhs = w.alg.anchor.evaluate(w.alpha_l[i], w.alpha_l[j]) * w.alg.A.phi;
      Matrix rhs = w.alg.A.phi * w.alg.anchor.rho[i][j];
      if (!(lhs == rhs)) {
        fail(r, {i, j}, matrix_to_string(lhs), matrix_to_string(rhs));
        return r;
      }
    }
  return r;
}

/// Anchor matrices with alpha twists applied, shared by the two
/// representation axioms.
struct AnchorTables {
  std::vector<std::vector<Matrix>> both_alpha;   // rho(alpha e_i, alpha e_j)
  std::vector<std::vector<Matrix>> right_alpha;  // rho(e_m, alpha e_l)
  std::vector<std::vector<Matrix>> left_alpha;   // rho(alpha e_k, e_m)

  AnchorTables(const Workspace& w) {
    const std::size_t d = w.dL;
    both_alpha.assign(d, std::vector<Matrix>(d, zero_matrix(w.dA)));
    right_alpha.assign(d, std::vector<Matrix>(d, zero_matrix(w.dA)));
    left_alpha.assign(d, std::vector<Matrix>(d, zero_matrix(w.dA)));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        both_alpha[i][j] = w.alg.anchor.evaluate(w.alpha_l[i], w.alpha_l[j]);
        right_alpha[i][j] = w.alg.anchor.evaluate(w.l_basis[i], w.alpha_l[j]);
        left_alpha[i][j] = w.alg.anchor.evaluate(w.alpha_l[i], w.l_basis[j]);
      }
  }

  /// rho([e_i,e_j,e_k], alpha e_l) composed with phi.
  Matrix bracket_right(const Workspace& w, std::size_t i, std::size_t j, std::size_t k,
                       std::size_t l) const {
    Matrix out = zero_matrix(w.dA);
    const Vec& coeff = w.btab[i][j][k];
    for (std::size_t m = 0; m < w.dL; ++m) {
      if (coeff[m] == 0) continue;
      out = out + right_alpha[m][l].scaled(coeff[m]);
    }
    return out * w.alg.A.phi;
  }

  /// rho(alpha e_k, [e_i,e_j,e_l]) composed with phi.
  Matrix bracket_left(const Workspace& w, std::size_t k, std::size_t i, std::size_t j,
                      std::size_t l) const {
    Matrix out = zero_matrix(w.dA);
    const Vec& coeff = w.btab[i][j][l];
    for (std::size_t m = 0; m < w.dL; ++m) {
      if (coeff[m] == 0) continue;
      out = out + left_alpha[k][m].scaled(coeff[m]);
    }
    return out * w.alg.A.phi;
  }
};

ConditionResult check_anchor_rep_r1(const Workspace& w, const AnchorTables& t) {
  ConditionResult r{.name = "anchor_rep_r1"};
  const auto& rho = w.alg.anchor.rho;
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j)
      for (std::size_t k = 0; k < w.dL; ++k)
        for (std::size_t l = 0; l < w.dL; ++l) {
          Matrix lhs = t.both_alpha[i][j] * rho[k][l] - t.both_alpha[k][l] * rho[i][j];
          Matrix rhs = t.bracket_right(w, i, j, k, l) + t.bracket_left(w, k, i, j, l);
          if (!(lhs == rhs)) {
            fail(r, {i, j, k, l}, matrix_to_string(lhs), matrix_to_string(rhs));
            return r;
          }
        }
  return r;
}

ConditionResult check_anchor_rep_r2(const Workspace& w, const AnchorTables& t) {
  ConditionResult r{.name = "anchor_rep_r2"};
  const auto& rho = w.alg.anchor.rho;
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j)
      for (std::size_t k = 0; k < w.dL; ++k)
        for (std::size_t l = 0; l < w.dL; ++l) {
          Matrix lhs = t.bracket_right(w, i, j, k, l);
          Matrix rhs = t.both_alpha[i][j] * rho[k][l] + t.both_alpha[j][k] * rho[i][l] +
                       t.both_alpha[k][i] * rho[j][l];
          if (!(lhs == rhs)) {
            fail(r, {i, j, k, l}, matrix_to_string(lhs), matrix_to_string(rhs));
            return r;
          }
        }
  return r;
}

ConditionResult check_anchor_a_linearity(const Workspace& w) {
  ConditionResult r{.name = "anchor_a_linearity"};
  for (std::size_t p = 0; p < w.dA; ++p) {
    Vec phi2a = w.alg.A.phi.apply(w.phi_a[p]);
    Matrix mult_op = w.alg.A.mult_operator(phi2a);
    for (std::size_t i = 0; i < w.dL; ++i)
      for (std::size_t j = 0; j < w.dL; ++j) {
        Matrix target = mult_op * w.alg.anchor.rho[i][j];
        Matrix left = w.alg.anchor.evaluate(w.alg.act(w.a_basis[p], w.l_basis[i]), w.l_basis[j]);
        if (!(left == target)) {
          fail(r, {p, i, j}, matrix_to_string(left), matrix_to_string(target));
          return r;
        }
        Matrix right =
            w.alg.anchor.evaluate(w.l_basis[i], w.alg.act(w.a_basis[p], w.l_basis[j]));
        if (!(right == target)) {
          fail(r, {p, i, j}, matrix_to_string(right), matrix_to_string(target));
          return r;
        }
      }
  }
  return r;
}

ConditionResult check_bracket_leibniz(const Workspace& w) {
  ConditionResult r{.name = "bracket_leibniz"};
  for (std::size_t i = 0; i < w.dL; ++i)
    for (std::size_t j = 0; j < w.dL; ++j)
      for (std::size_t p = 0; p < w.dA; ++p) {
        Vec phi2a = w.alg.A.phi.apply(w.phi_a[p]);
        Vec rho_a = w.alg.anchor.rho[i][j].apply(w.a_basis[p]);
        for (std::size_t k = 0; k < w.dL; ++k) {
          Vec lhs = w.alg.bracket_of(w.l_basis[i], w.l_basis[j],
                                     w.alg.act(w.a_basis[p], w.l_basis[k]));
          Vec rhs = vec_add(w.alg.act(phi2a, w.btab[i][j][k]),
                            w.alg.act(rho_a, w.alg.alpha.apply(w.alpha_l[k])));
          if (lhs != rhs) {
            fail(r, {i, j, p, k}, vec_to_string(lhs), vec_to_string(rhs));
            return r;
          }
        }
      }
  return r;
}

}  // namespace

VerificationReport verify_hom_jacobi(const HLR3Algebra& alg) {
  validate_shapes(alg);
  Workspace w(alg);
  VerificationReport report;
  report.conditions.push_back(check_hom_jacobi(w));
  return report;
}

VerificationReport verify_all(const HLR3Algebra& alg) {
  validate_shapes(alg);
  Workspace w(alg);
  AnchorTables tables(w);
  VerificationReport report;
  report.conditions.push_back(check_algebra_comm(w));
  report.conditions.push_back(check_algebra_assoc(w));
  report.conditions.push_back(check_algebra_unit(w));
  report.conditions.push_back(check_phi_endomorphism(w));
  report.conditions.push_back(check_module_unit(alg.A, alg.a_action, "a_module_unit"));
  report.conditions.push_back(check_module_assoc(alg.A, alg.a_action, "a_module_assoc"));
  report.conditions.push_back(check_bracket_skew(w));
  report.conditions.push_back(check_hom_jacobi(w));
  report.conditions.push_back(check_alpha_multiplicative(w));
  report.conditions.push_back(check_alpha_module_compat(w));
  report.conditions.push_back(check_anchor_skew(w));
  report.conditions.push_back(check_anchor_derivation(w));
  report.conditions.push_back(check_anchor_equivariance(w));
  report.conditions.push_back(check_anchor_rep_r1(w, tables));
  report.conditions.push_back(check_anchor_rep_r2(w, tables));
  report.conditions.push_back(check_anchor_a_linearity(w));
  report.conditions.push_back(check_bracket_leibniz(w));
  return report;
}

VerificationReport verify_morphism(const HLR3Algebra& src, const HLR3Algebra& dst,
                                   const HLR3Morphism& h) {
  validate_shapes(src);
  validate_shapes(dst);
  if (h.g.rows() != dst.A.dim || h.g.cols() != src.A.dim || h.f.rows() != dst.L_dim ||
      h.f.cols() != src.L_dim) {
    throw std::invalid_argument("morphism matrices have wrong shape");
  }
  VerificationReport report;

  ConditionResult g_mult{.name = "g_multiplicative"};
  for (std::size_t i = 0; i < src.A.dim && g_mult.passed; ++i)
    for (std::size_t j = 0; j < src.A.dim; ++j) {
      Vec ai = unit_vec(src.A.dim, i);
      Vec aj = unit_vec(src.A.dim, j);
      Vec lhs = h.g.apply(src.A.multiply(ai, aj));
      Vec rhs = dst.A.multiply(h.g.apply(ai), h.g.apply(aj));
      if (lhs != rhs) {
        fail(g_mult, {i, j}, vec_to_string(lhs), vec_to_string(rhs));
        break;
      }
    }
  report.conditions.push_back(g_mult);

  ConditionResult g_unit{.name = "g_unit"};
  Vec unit_image = h.g.apply(src.A.unit);
  if (unit_image != dst.A.unit) {
    fail(g_unit, {}, vec_to_string(unit_image), vec_to_string(dst.A.unit));
  }
  report.conditions.push_back(g_unit);

  ConditionResult mod{.name = "module_compat"};
  for (std::size_t i = 0; i < src.A.dim && mod.passed; ++i)
    for (std::size_t j = 0; j < src.L_dim; ++j) {
      Vec ai = unit_vec(src.A.dim, i);
      Vec ej = unit_vec(src.L_dim, j);
      Vec lhs = h.f.apply(src.act(ai, ej));
      Vec rhs = dst.act(h.g.apply(ai), h.f.apply(ej));
      if (lhs != rhs) {
        fail(mod, {i, j}, vec_to_string(lhs), vec_to_string(rhs));
        break;
      }
    }
  report.conditions.push_back(mod);

  ConditionResult br{.name = "bracket_compat"};
  for (std::size_t i = 0; i < src.L_dim && br.passed; ++i)
    for (std::size_t j = 0; j < src.L_dim && br.passed; ++j)
      for (std::size_t k = 0; k < src.L_dim; ++k) {
        Vec ei = unit_vec(src.L_dim, i);
        Vec ej = unit_vec(src.L_dim, j);
        Vec ek = unit_vec(src.L_dim, k);
        Vec lhs = h.f.apply(src.bracket_of(ei, ej, ek));
        Vec rhs = dst.bracket_of(h.f.apply(ei), h.f.apply(ej), h.f.apply(ek));
        if (lhs != rhs) {
          fail(br, {i, j, k}, vec_to_string(lhs), vec_to_string(rhs));
          break;
        }
      }
  report.conditions.push_back(br);

  ConditionResult ac{.name = "alpha_compat"};
  for (std::size_t i = 0; i < src.L_dim; ++i) {
    Vec ei = unit_vec(src.L_dim, i);
    Vec lhs = h.f.apply(src.alpha.apply(ei));
    Vec rhs = dst.alpha.apply(h.f.apply(ei));
    if (lhs != rhs) {
      fail(ac, {i}, vec_to_string(lhs), vec_to_string(rhs));
      break;
    }
  }
  report.conditions.push_back(ac);

  ConditionResult pc{.name = "phi_compat"};
  for (std::size_t i = 0; i < src.A.dim; ++i) {
    Vec ai = unit_vec(src.A.dim, i);
    Vec lhs = h.g.apply(src.A.phi.apply(ai));
    Vec rhs = dst.A.phi.apply(h.g.apply(ai));
    if (lhs != rhs) {
      fail(pc, {i}, vec_to_string(lhs), vec_to_string(rhs));
      break;
    }
  }
  report.conditions.push_back(pc);

  ConditionResult an{.name = "anchor_compat"};
  for (std::size_t i = 0; i < src.L_dim && an.passed; ++i)
    for (std::size_t j = 0; j < src.L_dim && an.passed; ++j)
      for (std::size_t p = 0; p < src.A.dim; ++p) {
        Vec ei = unit_vec(src.L_dim, i);
        Vec ej = unit_vec(src.L_dim, j);
        Vec ap = unit_vec(src.A.dim, p);
        Vec lhs = h.g.apply(src.anchor.rho[i][j].apply(ap));
        Vec rhs = dst.anchor.evaluate(h.f.apply(ei), h.f.apply(ej)).apply(h.g.apply(ap));
        if (lhs != rhs) {
          fail(an, {i, j, p}, vec_to_string(lhs), vec_to_string(rhs));
          break;
        }
      }
  report.conditions.push_back(an);

  return report;
}

VerificationReport check_anchor_axioms(const CommAlgebra& a, std::size_t l_dim,
                                       const Tensor& bracket, const Matrix& alpha,
                                       const Anchor& rho) {
  HLR3Algebra shell;
  shell.A = a;
  shell.L_dim = l_dim;
  shell.a_action.dim = l_dim;
  shell.a_action.action = Tensor({a.dim, l_dim, l_dim});
  shell.bracket = bracket;
  shell.alpha = alpha;
  shell.anchor = rho;
  validate_shapes(shell);
  Workspace w(shell);
  AnchorTables tables(w);
  VerificationReport report;
  report.conditions.push_back(check_anchor_skew(w));
  report.conditions.push_back(check_anchor_derivation(w));
  report.conditions.push_back(check_anchor_equivariance(w));
  report.conditions.push_back(check_anchor_rep_r1(w, tables));
  report.conditions.push_back(check_anchor_rep_r2(w, tables));
  return report;
}

Vec evaluate_bracket(const HLR3Algebra& alg, const Vec& x, const Vec& y, const Vec& z) {
  return alg.bracket_of(x, y, z);
}

Vec evaluate_anchor(const HLR3Algebra& alg, const Vec& x, const Vec& y, const Vec& a) {
  if (a.size() != alg.A.dim) throw std::invalid_argument("anchor argument dimension mismatch");
  return alg.anchor.evaluate(x, y).apply(a);
}

}  // namespace hlr3
