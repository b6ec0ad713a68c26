#include "hlr3/deformations.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "hlr3/cohomology.hpp"

namespace hlr3 {

namespace {

void fail(ConditionResult& r, std::vector<std::size_t> indices, std::string lhs,
          std::string rhs) {
  r.passed = false;
  r.indices = std::move(indices);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
}

Vec column_of(const Matrix& m, std::size_t j) {
  Vec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m.at(r, j);
  return out;
}

int perm_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

Vec slice_value(const Tensor& t, const std::vector<std::size_t>& args, std::size_t out_dim) {
  std::vector<std::size_t> full = args;
  full.push_back(0);
  Vec out(out_dim);
  for (std::size_t l = 0; l < out_dim; ++l) {
    full.back() = l;
    out[l] = t.at(full);
  }
  return out;
}

Vec eval_map(const Tensor& t, const std::vector<Vec>& args, std::size_t out_dim) {
  std::vector<std::size_t> arg_shape(t.shape.begin(), t.shape.end() - 1);
  Vec out(out_dim, Rat(0));
  for_each_index(arg_shape, [&](const std::vector<std::size_t>& idx) {
    Rat coef = 1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      coef *= args[k][idx[k]];
      if (coef == 0) return;
    }
    std::vector<std::size_t> full = idx;
    full.push_back(0);
    for (std::size_t l = 0; l < out_dim; ++l) {
      full.back() = l;
      out[l] += coef * t.at(full);
    }
  });
  return out;
}

/// Substitutes M e_i for the argument in the given slot.
Tensor contract_slot(const Tensor& t, std::size_t slot, const Matrix& m) {
  Tensor out(t.shape);
  for_each_index(t.shape, [&](const std::vector<std::size_t>& idx) {
    Rat acc = 0;
    std::vector<std::size_t> src = idx;
    for (std::size_t j = 0; j < t.shape[slot]; ++j) {
      src[slot] = j;
      acc += m.at(j, idx[slot]) * t.at(src);
    }
    out.at(idx) = acc;
  });
  return out;
}

/// Applies M to the value slot of a map tensor.
Tensor apply_output(const Tensor& t, const Matrix& m) {
  std::vector<std::size_t> arg_shape(t.shape.begin(), t.shape.end() - 1);
  Tensor out(t.shape);
  for_each_index(arg_shape, [&](const std::vector<std::size_t>& idx) {
    Vec v = m.apply(slice_value(t, idx, t.shape.back()));
    std::vector<std::size_t> full = idx;
    full.push_back(0);
    for (std::size_t l = 0; l < v.size(); ++l) {
      full.back() = l;
      out.at(full) = v[l];
    }
  });
  return out;
}

std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

std::size_t symbol_flat(const std::vector<std::size_t>& idx, std::size_t dl) {
  std::size_t off = 0;
  for (std::size_t k : idx) off = off * dl + k;
  return off;
}

/// Multilinear extension of the symbol table.
Matrix eval_symbol(const Multiderivation& d, const std::vector<Vec>& args, std::size_t dl,
                   std::size_t da) {
  Matrix out(da, da);
  std::vector<std::size_t> shape(d.degree, dl);
  for_each_index(shape, [&](const std::vector<std::size_t>& idx) {
    Rat coef = 1;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      coef *= args[k][idx[k]];
      if (coef == 0) return;
    }
    const Matrix& s = d.symbol[symbol_flat(idx, dl)];
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) out.at(r, c) += coef * s.at(r, c);
  });
  return out;
}

void validate_multiderivation(const HLR3Algebra& alg, const Multiderivation& d) {
  std::size_t dl = alg.L_dim;
  std::vector<std::size_t> expect(d.degree + 1, dl);
  expect.push_back(dl);
  if (d.map.shape != expect)
    throw std::invalid_argument("multiderivation map has wrong shape");
  if (d.symbol.size() != int_pow(dl, d.degree))
    throw std::invalid_argument("multiderivation symbol table has wrong size");
  for (const Matrix& s : d.symbol)
    if (s.rows() != alg.A.dim || s.cols() != alg.A.dim)
      throw std::invalid_argument("multiderivation symbol entry has wrong shape");
}

void for_each_strict(std::size_t dl, std::size_t arity,
                     const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (arity == 0) {
    fn({});
    return;
  }
  std::vector<std::size_t> idx(arity);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t from) {
    if (k == arity) {
      fn(idx);
      return;
    }
    for (std::size_t i = from; i < dl; ++i) {
      idx[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
}

std::string mat_str(const Matrix& m) { return matrix_to_string(m); }

struct MderWorkspace {
  const HLR3Algebra& alg;
  const Multiderivation& d;
  std::size_t dl;
  std::size_t da;
  Matrix phi_pow;
  Matrix alpha_pow;
  std::vector<Vec> l_basis;
  std::vector<Vec> a_basis;

  MderWorkspace(const HLR3Algebra& a, const Multiderivation& dd)
      : alg(a),
        d(dd),
        dl(a.L_dim),
        da(a.A.dim),
        phi_pow(a.A.phi.pow(dd.degree)),
        alpha_pow(a.alpha.pow(dd.degree)) {
    for (std::size_t i = 0; i < dl; ++i) l_basis.push_back(unit_vec(dl, i));
    for (std::size_t q = 0; q < da; ++q) a_basis.push_back(unit_vec(da, q));
  }
};

ConditionResult cond_map_skew(const MderWorkspace& w) {
  ConditionResult r{.name = "map_skew"};
  std::size_t arity = w.d.degree + 1;
  std::vector<std::size_t> arg_shape(arity, w.dl);
  bool done = false;
  for_each_index(arg_shape, [&](const std::vector<std::size_t>& idx) {
    if (done) return;
    for (std::size_t k = 0; k + 1 < arity; ++k) {
      std::vector<std::size_t> swapped = idx;
      std::swap(swapped[k], swapped[k + 1]);
      Vec lhs = slice_value(w.d.map, swapped, w.dl);
      Vec rhs = slice_value(w.d.map, idx, w.dl);
      for (std::size_t l = 0; l < w.dl; ++l) {
        if (lhs[l] + rhs[l] != 0) {
          std::vector<std::size_t> where = idx;
          where.push_back(k);
          fail(r, where, vec_to_string(lhs), vec_to_string(rhs));
          done = true;
          return;
        }
      }
    }
  });
  return r;
}

ConditionResult cond_map_equivariance(const MderWorkspace& w) {
  ConditionResult r{.name = "map_equivariance"};
  std::size_t arity = w.d.degree + 1;
  bool done = false;
  for_each_strict(w.dl, arity, [&](const std::vector<std::size_t>& idx) {
    if (done) return;
    std::vector<Vec> twisted;
    for (std::size_t k : idx) twisted.push_back(column_of(w.alg.alpha, k));
    Vec lhs = eval_map(w.d.map, twisted, w.dl);
    Vec rhs = w.alg.alpha.apply(slice_value(w.d.map, idx, w.dl));
    if (lhs != rhs) {
      fail(r, idx, vec_to_string(lhs), vec_to_string(rhs));
      done = true;
    }
  });
  return r;
}

ConditionResult cond_symbol_skew(const MderWorkspace& w) {
  ConditionResult r{.name = "symbol_skew"};
  if (w.d.degree < 2) return r;
  std::vector<std::size_t> shape(w.d.degree, w.dl);
  bool done = false;
  for_each_index(shape, [&](const std::vector<std::size_t>& idx) {
    if (done) return;
    for (std::size_t k = 0; k + 1 < w.d.degree; ++k) {
      std::vector<std::size_t> swapped = idx;
      std::swap(swapped[k], swapped[k + 1]);
      const Matrix& a = w.d.symbol[symbol_flat(swapped, w.dl)];
      const Matrix& b = w.d.symbol[symbol_flat(idx, w.dl)];
      Matrix sum = a + b;
      if (!sum.is_zero()) {
        std::vector<std::size_t> where = idx;
        where.push_back(k);
        fail(r, where, mat_str(a), mat_str(b));
        done = true;
        return;
      }
    }
  });
  return r;
}

ConditionResult cond_symbol_equivariance(const MderWorkspace& w) {
  ConditionResult r{.name = "symbol_equivariance"};
  bool done = false;
  for_each_strict(w.dl, w.d.degree, [&](const std::vector<std::size_t>& idx) {
    if (done) return;
    std::vector<Vec> twisted;
    for (std::size_t k : idx) twisted.push_back(column_of(w.alg.alpha, k));
    Matrix lhs = eval_symbol(w.d, twisted, w.dl, w.da) * w.alg.A.phi;
    Matrix rhs = w.alg.A.phi * w.d.symbol[symbol_flat(idx, w.dl)];
    if (!(lhs == rhs)) {
      fail(r, idx, mat_str(lhs), mat_str(rhs));
      done = true;
    }
  });
  return r;
}

ConditionResult cond_symbol_derivation(const MderWorkspace& w) {
  ConditionResult r{.name = "symbol_derivation"};
  bool done = false;
  for_each_strict(w.dl, w.d.degree, [&](const std::vector<std::size_t>& idx) {
    if (done) return;
    const Matrix& s = w.d.symbol[symbol_flat(idx, w.dl)];
    for (std::size_t q = 0; q < w.da && !done; ++q)
      for (std::size_t p = 0; p < w.da && !done; ++p) {
        Vec prod = w.alg.A.multiply(w.a_basis[q], w.a_basis[p]);
        Vec lhs = s.apply(prod);
        Vec rhs = w.alg.A.multiply(w.phi_pow.apply(w.a_basis[q]), s.apply(w.a_basis[p]));
        Vec rhs2 = w.alg.A.multiply(w.phi_pow.apply(w.a_basis[p]), s.apply(w.a_basis[q]));
        for (std::size_t t = 0; t < w.da; ++t) rhs[t] += rhs2[t];
        if (lhs != rhs) {
          std::vector<std::size_t> where = idx;
          where.push_back(q);
          where.push_back(p);
          fail(r, where, vec_to_string(lhs), vec_to_string(rhs));
          done = true;
        }
      }
  });
  return r;
}

ConditionResult cond_symbol_a_linear(const MderWorkspace& w) {
  ConditionResult r{.name = "symbol_a_linear"};
  if (w.d.degree == 0) return r;
  bool done = false;
  for_each_strict(w.dl, w.d.degree - 1, [&](const std::vector<std::size_t>& lead) {
    if (done) return;
    for (std::size_t j = 0; j < w.dl && !done; ++j)
      for (std::size_t q = 0; q < w.da && !done; ++q) {
        std::vector<Vec> args;
        for (std::size_t k : lead) args.push_back(w.l_basis[k]);
        args.push_back(w.alg.a_action.act(w.a_basis[q], w.l_basis[j]));
        Matrix lhs = eval_symbol(w.d, args, w.dl, w.da);
        std::vector<std::size_t> plain = lead;
        plain.push_back(j);
        Matrix rhs = w.alg.A.mult_operator(w.phi_pow.apply(w.a_basis[q])) *
                     w.d.symbol[symbol_flat(plain, w.dl)];
        if (!(lhs == rhs)) {
          std::vector<std::size_t> where = lead;
          where.push_back(j);
          where.push_back(q);
          fail(r, where, mat_str(lhs), mat_str(rhs));
          done = true;
        }
      }
  });
  return r;
}

ConditionResult cond_leibniz_rule(const MderWorkspace& w) {
  ConditionResult r{.name = "leibniz_rule"};
  bool done = false;
  for_each_strict(w.dl, w.d.degree, [&](const std::vector<std::size_t>& lead) {
    if (done) return;
    for (std::size_t j = 0; j < w.dl && !done; ++j)
      for (std::size_t q = 0; q < w.da && !done; ++q) {
        std::vector<Vec> args;
        for (std::size_t k : lead) args.push_back(w.l_basis[k]);
        args.push_back(w.alg.a_action.act(w.a_basis[q], w.l_basis[j]));
        Vec lhs = eval_map(w.d.map, args, w.dl);
        std::vector<std::size_t> plain = lead;
        plain.push_back(j);
        Vec scaled = w.alg.a_action.act(w.phi_pow.apply(w.a_basis[q]),
                                        slice_value(w.d.map, plain, w.dl));
        std::vector<Vec> lead_args;
        for (std::size_t k : lead) lead_args.push_back(w.l_basis[k]);
        Matrix s = eval_symbol(w.d, lead_args, w.dl, w.da);
        Vec sa = s.apply(w.a_basis[q]);
        Vec moved = w.alg.a_action.act(sa, column_of(w.alpha_pow, j));
        Vec rhs(w.dl);
        for (std::size_t l = 0; l < w.dl; ++l) rhs[l] = scaled[l] + moved[l];
        if (lhs != rhs) {
          std::vector<std::size_t> where = lead;
          where.push_back(j);
          where.push_back(q);
          fail(r, where, vec_to_string(lhs), vec_to_string(rhs));
          done = true;
        }
      }
  });
  return r;
}

/// The four-term pattern sum_{i+j=n} with precomputed pair operators
///   P_i(a,b) w = m_i(alpha e_a, alpha e_b, w).
struct OrderEquation {
  std::size_t dl = 0;
  std::vector<std::vector<Matrix>> pair_ops;
  std::vector<const Tensor*> maps;

  OrderEquation(const HLR3Algebra& alg, const std::vector<const Tensor*>& terms)
      : dl(alg.L_dim), maps(terms) {
    for (const Tensor* t : terms) {
      Tensor twisted = contract_slot(contract_slot(*t, 0, alg.alpha), 1, alg.alpha);
      std::vector<Matrix> ops;
      ops.reserve(dl * dl);
      for (std::size_t a = 0; a < dl; ++a)
        for (std::size_t b = 0; b < dl; ++b) {
          Matrix op(dl, dl);
          for (std::size_t c = 0; c < dl; ++c) {
            Vec v = slice_value(twisted, {a, b, c}, dl);
            for (std::size_t l = 0; l < dl; ++l) op.at(l, c) = v[l];
          }
          ops.push_back(op);
        }
      pair_ops.push_back(std::move(ops));
    }
  }

  [[nodiscard]] Vec eval(std::size_t n, std::size_t x, std::size_t y, std::size_t u,
                         std::size_t v, std::size_t w) const {
    Vec total(dl, Rat(0));
    for (std::size_t i = 0; i <= n; ++i) {
      std::size_t j = n - i;
      if (i >= maps.size() || j >= maps.size()) continue;
      const std::vector<Matrix>& p = pair_ops[i];
      const Tensor& mj = *maps[j];
      Vec t1 = p[x * dl + y].apply(slice_value(mj, {u, v, w}, dl));
      Vec t2 = p[v * dl + w].apply(slice_value(mj, {x, y, u}, dl));
      Vec t3 = p[u * dl + w].apply(slice_value(mj, {x, y, v}, dl));
      Vec t4 = p[u * dl + v].apply(slice_value(mj, {x, y, w}, dl));
      for (std::size_t l = 0; l < dl; ++l) total[l] += t1[l] - t2[l] + t3[l] - t4[l];
    }
    return total;
  }
};

ConditionResult order_condition(const HLR3Algebra& alg, const OrderEquation& eq, std::size_t n) {
  ConditionResult r{.name = "order_" + std::to_string(n)};
  std::size_t dl = alg.L_dim;
  for (std::size_t x = 0; x < dl; ++x)
    for (std::size_t y = 0; y < dl; ++y)
      for (std::size_t u = 0; u < dl; ++u)
        for (std::size_t v = 0; v < dl; ++v)
          for (std::size_t w = 0; w < dl; ++w) {
            Vec total = eq.eval(n, x, y, u, v, w);
            if (!vec_is_zero(total)) {
              fail(r, {x, y, u, v, w}, vec_to_string(total),
                   vec_to_string(Vec(dl, Rat(0))));
              return r;
            }
          }
  return r;
}

void validate_series(const HLR3Algebra& alg, const DeformationSeries& series) {
  if (series.terms.size() != series.order + 1)
    throw std::invalid_argument("series must provide one term per order");
  for (const Multiderivation& d : series.terms) {
    if (d.degree != 2) throw std::invalid_argument("series terms must have degree 2");
    validate_multiderivation(alg, d);
  }
  Multiderivation m0 = structure_as_multiderivation(alg);
  if (!(series.terms[0].map == m0.map))
    throw std::invalid_argument("series must start at the bracket");
  for (std::size_t i = 0; i < m0.symbol.size(); ++i)
    if (!(series.terms[0].symbol[i] == m0.symbol[i]))
      throw std::invalid_argument("series must start at the anchor symbol");
}

/// Powers of the automorphism series and its order-by-order inverse.
struct TransportSeries {
  std::vector<Matrix> fwd;
  std::vector<Matrix> inv;
};

TransportSeries build_transport(std::size_t dl, std::size_t order,
                                const std::vector<Matrix>& terms) {
  TransportSeries t;
  t.fwd.assign(order + 1, Matrix(dl, dl));
  t.inv.assign(order + 1, Matrix(dl, dl));
  t.fwd[0] = Matrix::identity(dl);
  for (std::size_t i = 1; i <= order; ++i)
    if (i - 1 < terms.size()) t.fwd[i] = terms[i - 1];
  t.inv[0] = Matrix::identity(dl);
  for (std::size_t k = 1; k <= order; ++k) {
    Matrix acc(dl, dl);
    for (std::size_t j = 1; j <= k; ++j) acc = acc + t.fwd[j] * t.inv[k - j];
    for (std::size_t r = 0; r < dl; ++r)
      for (std::size_t c = 0; c < dl; ++c) t.inv[k].at(r, c) = -acc.at(r, c);
  }
  return t;
}

Matrix unary_matrix(const Multiderivation& d, std::size_t dl) {
  Matrix out(dl, dl);
  for (std::size_t i = 0; i < dl; ++i)
    for (std::size_t l = 0; l < dl; ++l) out.at(l, i) = d.map.at({i, l});
  return out;
}

VerificationReport single_condition_report(ConditionResult r) {
  VerificationReport report;
  report.conditions.push_back(std::move(r));
  return report;
}

}  // namespace

Multiderivation zero_multiderivation(const HLR3Algebra& alg, std::size_t degree) {
  Multiderivation d;
  d.degree = degree;
  std::vector<std::size_t> shape(degree + 1, alg.L_dim);
  shape.push_back(alg.L_dim);
  d.map = Tensor(shape);
  d.symbol.assign(int_pow(alg.L_dim, degree), Matrix(alg.A.dim, alg.A.dim));
  return d;
}

Multiderivation structure_as_multiderivation(const HLR3Algebra& alg) {
  Multiderivation d;
  d.degree = 2;
  d.map = alg.bracket;
  d.symbol.reserve(alg.L_dim * alg.L_dim);
  for (std::size_t i = 0; i < alg.L_dim; ++i)
    for (std::size_t j = 0; j < alg.L_dim; ++j) d.symbol.push_back(alg.anchor.rho[i][j]);
  VerificationReport report = check_multiderivation(alg, d);
  if (!report.passed())
    throw PreconditionError("bracket and anchor fail the multiderivation conditions", report);
  return d;
}

VerificationReport check_multiderivation(const HLR3Algebra& alg, const Multiderivation& d) {
  validate_multiderivation(alg, d);
  MderWorkspace w(alg, d);
  VerificationReport report;
  report.conditions.push_back(cond_map_skew(w));
  report.conditions.push_back(cond_map_equivariance(w));
  report.conditions.push_back(cond_symbol_skew(w));
  report.conditions.push_back(cond_symbol_equivariance(w));
  report.conditions.push_back(cond_symbol_derivation(w));
  report.conditions.push_back(cond_symbol_a_linear(w));
  report.conditions.push_back(cond_leibniz_rule(w));
  return report;
}

Tensor compose(const HLR3Algebra& alg, const Multiderivation& d1, const Multiderivation& d2) {
  validate_multiderivation(alg, d1);
  validate_multiderivation(alg, d2);
  std::size_t dl = alg.L_dim;
  std::size_t p = d1.degree;
  std::size_t q = d2.degree;
  Matrix aq = alg.alpha.pow(q);
  Tensor t1b = d1.map;
  for (std::size_t s = 1; s <= p; ++s) t1b = contract_slot(t1b, s, aq);
  std::size_t arity = p + q + 1;
  std::vector<bool> pick(arity, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(q + 1), true);
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<int> signs;
  do {
    std::vector<std::size_t> perm;
    for (std::size_t i = 0; i < arity; ++i)
      if (pick[i]) perm.push_back(i);
    for (std::size_t i = 0; i < arity; ++i)
      if (!pick[i]) perm.push_back(i);
    signs.push_back(perm_sign(perm));
    blocks.push_back(std::move(perm));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::vector<std::size_t> shape(arity, dl);
  shape.push_back(dl);
  Tensor out(shape);
  std::vector<std::size_t> arg_shape(arity, dl);
  for_each_index(arg_shape, [&](const std::vector<std::size_t>& idx) {
    Vec acc(dl, Rat(0));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::vector<std::size_t>& perm = blocks[b];
      std::vector<std::size_t> inner(q + 1);
      for (std::size_t i = 0; i <= q; ++i) inner[i] = idx[perm[i]];
      Vec v2 = slice_value(d2.map, inner, dl);
      std::vector<std::size_t> full(p + 2, 0);
      for (std::size_t i = 0; i < p; ++i) full[1 + i] = idx[perm[q + 1 + i]];
      for (std::size_t j0 = 0; j0 < dl; ++j0) {
        if (v2[j0] == 0) continue;
        full[0] = j0;
        for (std::size_t l = 0; l < dl; ++l) {
          full[p + 1] = l;
          acc[l] += Rat(signs[b]) * v2[j0] * t1b.at(full);
        }
      }
    }
    std::vector<std::size_t> full = idx;
    full.push_back(0);
    for (std::size_t l = 0; l < dl; ++l) {
      full.back() = l;
      out.at(full) = acc[l];
    }
  });
  return out;
}

Tensor gbracket(const HLR3Algebra& alg, const Multiderivation& d1, const Multiderivation& d2) {
  Tensor fwd = compose(alg, d1, d2);
  Tensor bwd = compose(alg, d2, d1);
  int sign = (d1.degree * d2.degree) % 2 == 0 ? 1 : -1;
  Tensor out(fwd.shape);
  for (std::size_t t = 0; t < out.data.size(); ++t)
    out.data[t] = Rat(sign) * fwd.data[t] - bwd.data[t];
  return out;
}

bool maurer_cartan_check(const HLR3Algebra& alg) {
  OrderEquation eq(alg, {&alg.bracket});
  return order_condition(alg, eq, 0).passed;
}

Multiderivation def_delta(const HLR3Algebra& alg, const Multiderivation& d) {
  validate_multiderivation(alg, d);
  if (d.degree % 2 != 0)
    throw std::invalid_argument("deformation complex expects odd-arity multiderivations");
  LeftModule adj = make_adjoint_module(alg);
  Cochain in{d.degree / 2, d.map};
  Cochain out = delta(alg, adj, in);
  Multiderivation result = zero_multiderivation(alg, d.degree + 2);
  result.map = out.values;
  return result;
}

DeformationSeries undeformed_series(const HLR3Algebra& alg, std::size_t order) {
  DeformationSeries series;
  series.order = order;
  series.terms.push_back(structure_as_multiderivation(alg));
  for (std::size_t n = 1; n <= order; ++n) series.terms.push_back(zero_multiderivation(alg, 2));
  return series;
}

VerificationReport check_deformation(const HLR3Algebra& alg, const DeformationSeries& series,
                                     DeformationMode mode) {
  validate_series(alg, series);
  std::vector<const Tensor*> maps;
  maps.reserve(series.terms.size());
  for (const Multiderivation& d : series.terms) maps.push_back(&d.map);
  OrderEquation eq(alg, maps);
  std::size_t limit = mode == DeformationMode::strict_order ? series.order : 2 * series.order;
  VerificationReport report;
  for (std::size_t n = 0; n <= limit; ++n)
    report.conditions.push_back(order_condition(alg, eq, n));
  return report;
}

VerificationReport check_formal_automorphism(const HLR3Algebra& alg,
                                             const FormalAutomorphism& phi) {
  if (phi.terms.size() != phi.order)
    throw std::invalid_argument("automorphism must provide one term per order");
  ConditionResult r{.name = "alpha_commutes"};
  for (std::size_t i = 0; i < phi.terms.size() && r.passed; ++i) {
    const Matrix& t = phi.terms[i];
    if (t.rows() != alg.L_dim || t.cols() != alg.L_dim)
      throw std::invalid_argument("automorphism term has wrong shape");
    Matrix lhs = t * alg.alpha;
    Matrix rhs = alg.alpha * t;
    for (std::size_t row = 0; row < alg.L_dim && r.passed; ++row)
      for (std::size_t col = 0; col < alg.L_dim && r.passed; ++col)
        if (lhs.at(row, col) != rhs.at(row, col))
          fail(r, {i + 1, row, col}, mat_str(lhs), mat_str(rhs));
  }
  return single_condition_report(std::move(r));
}

DeformationSeries apply_equivalence(const HLR3Algebra& alg, const DeformationSeries& series,
                                    const FormalAutomorphism& phi) {
  validate_series(alg, series);
  if (phi.order != series.order)
    throw std::invalid_argument("automorphism order must match the series order");
  VerificationReport commutes = check_formal_automorphism(alg, phi);
  if (!commutes.passed())
    throw PreconditionError("automorphism terms must commute with the twist", commutes);
  std::size_t dl = alg.L_dim;
  std::size_t order = series.order;
  TransportSeries t = build_transport(dl, order, phi.terms);
  DeformationSeries out;
  out.order = order;
  out.terms.push_back(structure_as_multiderivation(alg));
  for (std::size_t n = 1; n <= order; ++n) out.terms.push_back(zero_multiderivation(alg, 2));
  std::vector<Tensor> acc(order + 1, Tensor(series.terms[0].map.shape));
  for (std::size_t n = 0; n <= order; ++n) {
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = 0; a + b <= n; ++b) {
        if (series.terms[b].map.is_zero()) continue;
        for (std::size_t c = 0; a + b + c <= n; ++c)
          for (std::size_t d = 0; a + b + c + d <= n; ++d) {
            std::size_t e = n - a - b - c - d;
            Tensor piece = contract_slot(series.terms[b].map, 0, t.fwd[c]);
            piece = contract_slot(piece, 1, t.fwd[d]);
            piece = contract_slot(piece, 2, t.fwd[e]);
            piece = apply_output(piece, t.inv[a]);
            for (std::size_t k = 0; k < acc[n].data.size(); ++k)
              acc[n].data[k] += piece.data[k];
          }
      }
  }
  if (!(acc[0] == alg.bracket))
    throw PreconditionError("transport moved the structure term",
                            single_condition_report(ConditionResult{.name = "fixes_structure",
                                                                    .passed = false}));
  for (std::size_t n = 1; n <= order; ++n) out.terms[n].map = std::move(acc[n]);
  return out;
}

DeformationSeries trivialize_step(const HLR3Algebra& alg, const DeformationSeries& series,
                                  std::size_t n, const Multiderivation& phi) {
  validate_series(alg, series);
  if (n == 0 || n > series.order)
    throw std::invalid_argument("step order must lie within the series order");
  if (phi.degree != 0) throw std::invalid_argument("trivializing map must have degree 0");
  validate_multiderivation(alg, phi);
  for (std::size_t i = 1; i < n; ++i)
    if (!series.terms[i].map.is_zero()) {
      ConditionResult r{.name = "vanish_below_step"};
      fail(r, {i}, "nonzero term", "0");
      throw PreconditionError("series terms below the step order must vanish",
                              single_condition_report(std::move(r)));
    }
  Multiderivation bound = def_delta(alg, phi);
  if (!(bound.map == series.terms[n].map)) {
    ConditionResult r{.name = "bounds_step_term"};
    fail(r, {n}, "def_delta of the map", "the order-n term");
    throw PreconditionError("the unary map does not bound the step-order term",
                            single_condition_report(std::move(r)));
  }
  Matrix pm = unary_matrix(phi, alg.L_dim);
  FormalAutomorphism step;
  step.order = series.order;
  step.terms.assign(series.order, Matrix(alg.L_dim, alg.L_dim));
  for (std::size_t r = 0; r < alg.L_dim; ++r)
    for (std::size_t c = 0; c < alg.L_dim; ++c) step.terms[n - 1].at(r, c) = -pm.at(r, c);
  DeformationSeries out = apply_equivalence(alg, series, step);
  if (!out.terms[n].map.is_zero()) {
    ConditionResult r{.name = "transport_cancels"};
    fail(r, {n}, "transported term", "0");
    throw PreconditionError("transport failed to cancel the step-order term",
                            single_condition_report(std::move(r)));
  }
  return out;
}

std::optional<Multiderivation> trivializing_map(const HLR3Algebra& alg,
                                                const Multiderivation& target) {
  validate_multiderivation(alg, target);
  if (target.degree != 2)
    throw std::invalid_argument("trivialization target must have degree 2");
  LeftModule adj = make_adjoint_module(alg);
  CochainSpaceBasis s0 = cochain_space(alg, adj, 0);
  CochainSpaceBasis s1 = cochain_space(alg, adj, 1);
  Matrix d1 = delta_matrix(alg, adj, 1);
  CochainShape shape0 = cochain_shape(0, alg.L_dim, alg.L_dim);
  CochainShape shape1 = cochain_shape(1, alg.L_dim, alg.L_dim);
  Vec raw = cochain_to_coords(shape1, Cochain{1, target.map});
  Vec rhs;
  if (s1.full) {
    rhs = raw;
  } else {
    std::optional<Vec> reduced = s1.express(raw);
    if (!reduced.has_value()) return std::nullopt;
    rhs = *reduced;
  }
  std::optional<Vec> sol = solve(d1, rhs);
  if (!sol.has_value()) return std::nullopt;
  Vec canonical;
  if (s0.full) {
    canonical = *sol;
  } else {
    canonical.assign(shape0.raw_dim(), Rat(0));
    for (std::size_t i = 0; i < sol->size(); ++i) {
      Vec b = s0.basis_coords(i);
      for (std::size_t k = 0; k < canonical.size(); ++k) canonical[k] += (*sol)[i] * b[k];
    }
  }
  Cochain c0 = cochain_from_coords(shape0, canonical);
  Multiderivation phi = zero_multiderivation(alg, 0);
  phi.map = c0.values;
  return phi;
}

InfinitesimalClass infinitesimal_class(const HLR3Algebra& alg, const DeformationSeries& series) {
  validate_series(alg, series);
  InfinitesimalClass out;
  out.representative = zero_multiderivation(alg, 2);
  std::size_t first = 0;
  for (std::size_t n = 1; n <= series.order; ++n)
    if (!series.terms[n].map.is_zero()) {
      first = n;
      break;
    }
  if (first == 0) {
    out.trivial_to_order = true;
    return out;
  }
  out.order = first;
  out.representative = series.terms[first];
  out.closed = def_delta(alg, series.terms[first]).map.is_zero();
  std::optional<Multiderivation> phi = trivializing_map(alg, series.terms[first]);
  out.bounding = phi.has_value();
  out.primitive = std::move(phi);
  LeftModule adj = make_adjoint_module(alg);
  CochainSpaceBasis s1 = cochain_space(alg, adj, 1);
  CochainShape shape1 = cochain_shape(1, alg.L_dim, alg.L_dim);
  Matrix d1 = delta_matrix(alg, adj, 1);
  RrefResult image = rref(d1.transposed());
  for (std::size_t r = 0; r < image.rank; ++r) {
    Vec row(d1.rows());
    for (std::size_t c = 0; c < d1.rows(); ++c) row[c] = image.reduced.at(r, c);
    Vec canonical;
    if (s1.full) {
      canonical = row;
    } else {
      canonical.assign(shape1.raw_dim(), Rat(0));
      for (std::size_t i = 0; i < row.size(); ++i) {
        Vec b = s1.basis_coords(i);
        for (std::size_t k = 0; k < canonical.size(); ++k) canonical[k] += row[i] * b[k];
      }
    }
    Multiderivation d = zero_multiderivation(alg, 2);
    d.map = cochain_from_coords(shape1, canonical).values;
    out.coboundary_basis.push_back(std::move(d));
  }
  out.rigid = cohomology_dim(alg, adj, 1).dim_h == 0;
  return out;
}

}  // namespace hlr3
