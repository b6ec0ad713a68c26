#include "hlr3/cohomology.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace hlr3 {

namespace {

void fail(ConditionResult& r, std::vector<std::size_t> idx, std::string lhs, std::string rhs) {
  r.passed = false;
  r.indices = std::move(idx);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
}

void validate_module_shapes(const HLR3Algebra& alg, const LeftModule& mod) {
  const std::size_t dA = alg.A.dim;
  const std::size_t dL = alg.L_dim;
  const std::size_t dM = mod.dim;
  if (dM == 0) throw std::invalid_argument("module dimension must be positive");
  if (mod.a_action.dim != dM ||
      mod.a_action.action.shape != std::vector<std::size_t>{dA, dM, dM}) {
    throw std::invalid_argument("module action tensor has wrong shape");
  }
  if (mod.beta.rows() != dM || mod.beta.cols() != dM) {
    throw std::invalid_argument("beta has wrong shape");
  }
  if (mod.psi.size() != dL) throw std::invalid_argument("psi table has wrong shape");
  for (const auto& row : mod.psi) {
    if (row.size() != dL) throw std::invalid_argument("psi table has wrong shape");
    for (const auto& m : row) {
      if (m.rows() != dM || m.cols() != dM) {
        throw std::invalid_argument("psi entry has wrong shape");
      }
    }
  }
}

/// Multilinear evaluation of a cochain tensor at vector arguments.
Vec eval_cochain(const Tensor& values, std::size_t m_dim, const std::vector<Vec>& args) {
  const std::size_t arity = args.size();
  std::vector<std::vector<std::size_t>> support(arity);
  for (std::size_t p = 0; p < arity; ++p) {
    for (std::size_t i = 0; i < args[p].size(); ++i) {
      if (args[p][i] != 0) support[p].push_back(i);
    }
    if (support[p].empty()) return Vec(m_dim);
  }
  Vec out(m_dim);
  std::vector<std::size_t> pos(arity, 0);
  std::vector<std::size_t> idx(arity + 1);
  while (true) {
    Rat coeff(1);
    for (std::size_t p = 0; p < arity; ++p) {
      idx[p] = support[p][pos[p]];
      coeff *= args[p][idx[p]];
    }
    for (std::size_t t = 0; t < m_dim; ++t) {
      idx[arity] = t;
      const Rat& v = values.at(idx);
      if (v != 0) out[t] += coeff * v;
    }
    std::size_t p = arity;
    while (p > 0) {
      --p;
      if (++pos[p] < support[p].size()) break;
      pos[p] = 0;
      if (p == 0) return out;
    }
    if (arity == 0) return out;
  }
}

Vec cochain_at(const Tensor& values, const std::vector<std::size_t>& tuple, std::size_t m_dim) {
  std::vector<std::size_t> idx = tuple;
  idx.push_back(0);
  Vec out(m_dim);
  for (std::size_t t = 0; t < m_dim; ++t) {
    idx.back() = t;
    out[t] = values.at(idx);
  }
  return out;
}

std::vector<std::size_t> cochain_value_shape(std::size_t degree, std::size_t l_dim,
                                             std::size_t m_dim) {
  std::vector<std::size_t> shape(cochain_arity(degree), l_dim);
  shape.push_back(m_dim);
  return shape;
}

void check_cochain_shape(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f) {
  if (f.values.shape != cochain_value_shape(f.degree, alg.L_dim, mod.dim)) {
    throw std::invalid_argument("cochain tensor has wrong shape");
  }
}

/// Iterates over all argument tuples (without the trailing M index).
template <typename Fn>
void for_each_tuple(std::size_t arity, std::size_t l_dim, Fn&& fn) {
  std::vector<std::size_t> tuple(arity, 0);
  while (true) {
    fn(tuple);
    std::size_t p = arity;
    while (p > 0) {
      --p;
      if (++tuple[p] < l_dim) break;
      tuple[p] = 0;
      if (p == 0) return;
    }
    if (arity == 0) return;
  }
}

/// True when each leading pair and the closing triple are weakly increasing.
/// Unlike the canonical list this admits repeats inside a group, so every
/// basis tuple is a signed permutation of exactly one weakly sorted tuple.
bool weakly_sorted(std::size_t degree, const std::vector<std::size_t>& tuple) {
  if (degree == 0) return true;
  for (std::size_t k = 0; k + 1 < degree; ++k) {
    if (tuple[2 * k] > tuple[2 * k + 1]) return false;
  }
  const std::size_t a = 2 * (degree - 1);
  return tuple[a] <= tuple[a + 1] && tuple[a + 1] <= tuple[a + 2];
}

struct DeltaContext {
  const HLR3Algebra& alg;
  const LeftModule& mod;
  std::size_t n;  // target degree
  std::vector<Vec> alpha_col;
  std::vector<Vec> alpha_n_col;
  Rat sign_special;
};

DeltaContext make_delta_context(const HLR3Algebra& alg, const LeftModule& mod,
                                std::size_t target_degree) {
  DeltaContext ctx{alg, mod, target_degree, {}, {}, Rat(1)};
  Matrix alpha_n = alg.alpha.pow(target_degree);
  for (std::size_t i = 0; i < alg.L_dim; ++i) {
    ctx.alpha_col.push_back(alg.alpha.apply(unit_vec(alg.L_dim, i)));
    ctx.alpha_n_col.push_back(alpha_n.apply(unit_vec(alg.L_dim, i)));
  }
  if (target_degree % 2 == 0) ctx.sign_special = Rat(-1);  // (-1)^(n+1)
  return ctx;
}

/// Value of (delta f) at one output basis tuple; f has degree n-1.
Vec delta_value(const DeltaContext& ctx, const Tensor& f_values,
                const std::vector<std::size_t>& idx) {
  const std::size_t n = ctx.n;
  const std::size_t m_dim = ctx.mod.dim;
  const std::size_t l_dim = ctx.alg.L_dim;
  Vec out(m_dim);
  auto add_psi_term = [&](const Rat& sign, const Vec& u, const Vec& v, const Vec& fv) {
    if (vec_is_zero(fv)) return;
    Vec applied = ctx.mod.psi_of(u, v).apply(fv);
    for (std::size_t t = 0; t < m_dim; ++t) out[t] += sign * applied[t];
  };

  // Two closing terms, then the pair-action sum over the n leading pairs.
  {
    std::vector<std::size_t> tuple(idx.begin(), idx.begin() + (2 * n - 2));
    tuple.push_back(idx[2 * n - 1]);
    add_psi_term(ctx.sign_special, ctx.alpha_n_col[idx[2 * n]],
                 ctx.alpha_n_col[idx[2 * n - 2]], cochain_at(f_values, tuple, m_dim));
  }
  {
    std::vector<std::size_t> tuple(idx.begin(), idx.begin() + (2 * n - 1));
    add_psi_term(ctx.sign_special, ctx.alpha_n_col[idx[2 * n - 1]], ctx.alpha_n_col[idx[2 * n]],
                 cochain_at(f_values, tuple, m_dim));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> tuple;
    tuple.reserve(2 * n - 1);
    for (std::size_t p = 0; p < 2 * n + 1; ++p) {
      if (p != 2 * k - 2 && p != 2 * k - 1) tuple.push_back(idx[p]);
    }
    Rat sign = (k % 2 == 1) ? Rat(1) : Rat(-1);  // (-1)^(k+1)
    add_psi_term(sign, ctx.alpha_n_col[idx[2 * k - 2]], ctx.alpha_n_col[idx[2 * k - 1]],
                 cochain_at(f_values, tuple, m_dim));
  }

  // Insertion sum: the bracket lands in slot j, every other surviving slot
  // carries a single alpha.
  for (std::size_t k = 1; k <= n; ++k) {
    Rat sign = (k % 2 == 1) ? Rat(-1) : Rat(1);  // (-1)^k
    for (std::size_t pj = 2 * k; pj <= 2 * n; ++pj) {
      Vec bracket = ctx.alg.bracket_of(unit_vec(l_dim, idx[2 * k - 2]),
                                       unit_vec(l_dim, idx[2 * k - 1]),
                                       unit_vec(l_dim, idx[pj]));
      std::vector<Vec> args;
      args.reserve(2 * n - 1);
      for (std::size_t p = 0; p < 2 * n + 1; ++p) {
        if (p == 2 * k - 2 || p == 2 * k - 1) continue;
        if (p == pj) {
          args.push_back(bracket);
        } else {
          args.push_back(ctx.alpha_col[idx[p]]);
        }
      }
      Vec fv = eval_cochain(f_values, m_dim, args);
      for (std::size_t t = 0; t < m_dim; ++t) {
        if (fv[t] != 0) out[t] += sign * fv[t];
      }
    }
  }
  return out;
}

}  // namespace

std::size_t cochain_arity(std::size_t degree) { return 2 * degree + 1; }

Cochain zero_cochain(std::size_t degree, std::size_t l_dim, std::size_t m_dim) {
  return Cochain{degree, Tensor(cochain_value_shape(degree, l_dim, m_dim))};
}

CochainShape cochain_shape(std::size_t degree, std::size_t l_dim, std::size_t m_dim) {
  CochainShape s;
  s.degree = degree;
  s.l_dim = l_dim;
  s.m_dim = m_dim;

  if (degree == 0) {
    for (std::size_t i = 0; i < l_dim; ++i) s.canonical.push_back({i});
    return s;
  }

  std::vector<std::vector<std::size_t>> pairs;
  s.pair_rank_.assign(l_dim, std::vector<std::size_t>(l_dim, 0));
  for (std::size_t i = 0; i < l_dim; ++i)
    for (std::size_t j = i + 1; j < l_dim; ++j) {
      s.pair_rank_[i][j] = pairs.size();
      pairs.push_back({i, j});
    }
  std::vector<std::vector<std::size_t>> triples;
  s.triple_rank_.assign(l_dim, std::vector<std::vector<std::size_t>>(
                                   l_dim, std::vector<std::size_t>(l_dim, 0)));
  for (std::size_t i = 0; i < l_dim; ++i)
    for (std::size_t j = i + 1; j < l_dim; ++j)
      for (std::size_t k = j + 1; k < l_dim; ++k) {
        s.triple_rank_[i][j][k] = triples.size();
        triples.push_back({i, j, k});
      }
  s.n_pairs_ = pairs.size();
  s.n_triples_ = triples.size();

  const std::size_t leading = degree - 1;
  std::vector<std::size_t> choice(leading, 0);
  while (true) {
    for (std::size_t t = 0; t < triples.size(); ++t) {
      std::vector<std::size_t> tuple;
      tuple.reserve(cochain_arity(degree));
      for (std::size_t k = 0; k < leading; ++k) {
        tuple.push_back(pairs[choice[k]][0]);
        tuple.push_back(pairs[choice[k]][1]);
      }
      tuple.insert(tuple.end(), triples[t].begin(), triples[t].end());
      s.canonical.push_back(std::move(tuple));
    }
    std::size_t p = leading;
    while (p > 0) {
      --p;
      if (++choice[p] < pairs.size()) break;
      choice[p] = 0;
      if (p == 0) return s;
    }
    if (leading == 0) return s;
  }
}

std::optional<std::pair<int, std::size_t>> CochainShape::normalize(
    const std::vector<std::size_t>& tuple) const {
  if (tuple.size() != arity()) throw std::invalid_argument("tuple has wrong arity");
  if (degree == 0) return std::pair<int, std::size_t>{1, tuple[0]};

  int sign = 1;
  std::size_t rank = 0;
  for (std::size_t k = 0; k + 1 < degree; ++k) {
    std::size_t a = tuple[2 * k], b = tuple[2 * k + 1];
    if (a == b) return std::nullopt;
    if (a > b) {
      std::swap(a, b);
      sign = -sign;
    }
    rank = rank * n_pairs_ + pair_rank_[a][b];
  }
  std::size_t x = tuple[arity() - 3], y = tuple[arity() - 2], z = tuple[arity() - 1];
  if (x == y || y == z || x == z) return std::nullopt;
  if (x > y) {
    std::swap(x, y);
    sign = -sign;
  }
  if (y > z) {
    std::swap(y, z);
    sign = -sign;
  }
  if (x > y) {
    std::swap(x, y);
    sign = -sign;
  }
  rank = rank * n_triples_ + triple_rank_[x][y][z];
  return std::pair<int, std::size_t>{sign, rank};
}

Vec cochain_to_coords(const CochainShape& shape, const Cochain& f) {
  Vec out(shape.raw_dim());
  for (std::size_t r = 0; r < shape.canonical.size(); ++r) {
    Vec v = cochain_at(f.values, shape.canonical[r], shape.m_dim);
    for (std::size_t t = 0; t < shape.m_dim; ++t) out[r * shape.m_dim + t] = v[t];
  }
  return out;
}

Cochain cochain_from_coords(const CochainShape& shape, const Vec& coords) {
  if (coords.size() != shape.raw_dim()) {
    throw std::invalid_argument("coordinate vector has wrong size");
  }
  Cochain f = zero_cochain(shape.degree, shape.l_dim, shape.m_dim);
  std::vector<std::size_t> idx(shape.arity() + 1);
  for_each_tuple(shape.arity(), shape.l_dim, [&](const std::vector<std::size_t>& tuple) {
    auto norm = shape.normalize(tuple);
    if (!norm) return;
    auto [sign, rank] = *norm;
    for (std::size_t p = 0; p < shape.arity(); ++p) idx[p] = tuple[p];
    for (std::size_t t = 0; t < shape.m_dim; ++t) {
      const Rat& c = coords[rank * shape.m_dim + t];
      if (c == 0) continue;
      idx[shape.arity()] = t;
      f.values.at(idx) = sign > 0 ? c : -c;
    }
  });
  return f;
}

Vec CochainSpaceBasis::basis_coords(std::size_t i) const {
  if (i >= dim()) throw std::invalid_argument("basis index out of range");
  if (full) return unit_vec(shape.raw_dim(), i);
  return coords.vectors[i];
}

Cochain CochainSpaceBasis::basis_cochain(std::size_t i) const {
  return cochain_from_coords(shape, basis_coords(i));
}

std::optional<Vec> CochainSpaceBasis::express(const Vec& reduced) const {
  if (reduced.size() != shape.raw_dim()) {
    throw std::invalid_argument("coordinate vector has wrong size");
  }
  if (full) return reduced;
  return express_in_basis(coords, reduced);
}

CochainSpaceBasis cochain_space(const HLR3Algebra& alg, const LeftModule& mod,
                                std::size_t degree) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  CochainSpaceBasis out;
  out.degree = degree;
  out.shape = cochain_shape(degree, alg.L_dim, mod.dim);
  const CochainShape& shape = out.shape;
  const std::size_t raw = shape.raw_dim();
  const std::size_t arity = shape.arity();
  const std::size_t dM = mod.dim;
  const std::size_t dA = alg.A.dim;

  std::vector<Vec> alpha_col;
  for (std::size_t i = 0; i < alg.L_dim; ++i) {
    alpha_col.push_back(alg.alpha.apply(unit_vec(alg.L_dim, i)));
  }
  Matrix phi_pow = alg.A.phi.pow(arity);

  using SparseRow = std::map<std::size_t, Rat>;
  std::set<std::vector<std::pair<std::size_t, Rat>>> rows;
  // Unknown f expanded at vector arguments, written as row coefficients.
  auto accumulate_eval = [&](SparseRow& row, const std::vector<Vec>& args, std::size_t t) {
    std::vector<std::vector<std::size_t>> support(arity);
    for (std::size_t p = 0; p < arity; ++p) {
      for (std::size_t i = 0; i < args[p].size(); ++i) {
        if (args[p][i] != 0) support[p].push_back(i);
      }
      if (support[p].empty()) return;
    }
    std::vector<std::size_t> pos(arity, 0);
    std::vector<std::size_t> tuple(arity);
    while (true) {
      Rat coeff(1);
      for (std::size_t p = 0; p < arity; ++p) {
        tuple[p] = support[p][pos[p]];
        coeff *= args[p][tuple[p]];
      }
      if (auto norm = shape.normalize(tuple)) {
        auto [sign, rank] = *norm;
        row[rank * dM + t] += sign > 0 ? coeff : -coeff;
      }
      std::size_t p = arity;
      bool done = true;
      while (p > 0) {
        --p;
        if (++pos[p] < support[p].size()) {
          done = false;
          break;
        }
        pos[p] = 0;
      }
      if (done) return;
    }
  };
  auto push_if_nonzero = [&](const SparseRow& row) {
    std::vector<std::pair<std::size_t, Rat>> packed;
    for (const auto& [c, v] : row) {
      if (v != 0) packed.emplace_back(c, v);
    }
    if (!packed.empty()) rows.insert(std::move(packed));
  };

  // Equivariance: f(alpha x_1, ..., alpha x_(2n+1)) - beta f(x) = 0. Rows on
  // canonical tuples suffice because both sides vanish together on repeats.
  for (std::size_t r = 0; r < shape.canonical.size(); ++r) {
    const auto& T = shape.canonical[r];
    std::vector<Vec> args;
    for (std::size_t p = 0; p < arity; ++p) args.push_back(alpha_col[T[p]]);
    for (std::size_t t = 0; t < dM; ++t) {
      SparseRow row;
      accumulate_eval(row, args, t);
      for (std::size_t s = 0; s < dM; ++s) {
        const Rat& b = mod.beta.at(t, s);
        if (b != 0) row[r * dM + s] -= b;
      }
      push_if_nonzero(row);
    }
  }

  // A-multilinearity: f(..., a x_p, ...) - phi^(2n+1)(a) f(x) = 0. The action
  // insertion breaks the slot symmetry, so rows must also be anchored on
  // weakly sorted tuples whose own value is forced to zero.
  if (dA > 1) {
    std::vector<Vec> unit_col;
    for (std::size_t i = 0; i < alg.L_dim; ++i) unit_col.push_back(unit_vec(alg.L_dim, i));
    std::vector<Matrix> scale_op;
    std::vector<std::vector<Vec>> moved(dA);
    for (std::size_t q = 0; q < dA; ++q) {
      Vec aq = unit_vec(dA, q);
      scale_op.push_back(mod.a_action.action_operator(phi_pow.apply(aq)));
      for (std::size_t i = 0; i < alg.L_dim; ++i) moved[q].push_back(alg.act(aq, unit_col[i]));
    }
    for_each_tuple(arity, alg.L_dim, [&](const std::vector<std::size_t>& T) {
      if (!weakly_sorted(degree, T)) return;
      auto base = shape.normalize(T);
      for (std::size_t p = 0; p < arity; ++p) {
        for (std::size_t q = 0; q < dA; ++q) {
          std::vector<Vec> margs;
          for (std::size_t pp = 0; pp < arity; ++pp) {
            margs.push_back(pp == p ? moved[q][T[pp]] : unit_col[T[pp]]);
          }
          for (std::size_t t = 0; t < dM; ++t) {
            SparseRow row;
            accumulate_eval(row, margs, t);
            if (base) {
              for (std::size_t s = 0; s < dM; ++s) {
                const Rat& b = scale_op[q].at(t, s);
                if (b != 0) row[base->second * dM + s] -= base->first > 0 ? b : -b;
              }
            }
            push_if_nonzero(row);
          }
        }
      }
    });
  }

  if (rows.empty()) {
    out.full = true;
    return out;
  }
  Matrix system(rows.size(), raw);
  std::size_t i = 0;
  for (const auto& packed : rows) {
    for (const auto& [c, v] : packed) system.at(i, c) = v;
    ++i;
  }
  out.full = false;
  out.coords = kernel(system);
  return out;
}

VerificationReport check_cochain(const HLR3Algebra& alg, const LeftModule& mod,
                                 const Cochain& f) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  check_cochain_shape(alg, mod, f);
  VerificationReport report;
  CochainShape shape = cochain_shape(f.degree, alg.L_dim, mod.dim);
  const std::size_t arity = shape.arity();
  const std::size_t dM = mod.dim;
  const std::size_t dA = alg.A.dim;

  {
    ConditionResult r{.name = "cochain_skew"};
    for_each_tuple(arity, alg.L_dim, [&](const std::vector<std::size_t>& tuple) {
      if (!r.passed) return;
      Vec got = cochain_at(f.values, tuple, dM);
      auto norm = shape.normalize(tuple);
      Vec want(dM);
      if (norm) {
        want = cochain_at(f.values, shape.canonical[norm->second], dM);
        if (norm->first < 0) want = vec_scaled(want, Rat(-1));
      }
      if (got != want) {
        fail(r, tuple, vec_to_string(got), vec_to_string(want));
      }
    });
    report.conditions.push_back(std::move(r));
  }

  std::vector<Vec> alpha_col;
  for (std::size_t i = 0; i < alg.L_dim; ++i) {
    alpha_col.push_back(alg.alpha.apply(unit_vec(alg.L_dim, i)));
  }
  {
    ConditionResult r{.name = "cochain_equivariance"};
    for (const auto& T : shape.canonical) {
      std::vector<Vec> args;
      for (std::size_t p = 0; p < arity; ++p) args.push_back(alpha_col[T[p]]);
      Vec lhs = eval_cochain(f.values, dM, args);
      Vec rhs = mod.beta.apply(cochain_at(f.values, T, dM));
      if (lhs != rhs) {
        fail(r, T, vec_to_string(lhs), vec_to_string(rhs));
        break;
      }
    }
    report.conditions.push_back(std::move(r));
  }
  {
    // Anchored on weakly sorted tuples: repeats inside a group zero out f(x)
    // but can still leave a nonzero left side once the action is inserted.
    ConditionResult r{.name = "cochain_a_linearity"};
    Matrix phi_pow = alg.A.phi.pow(arity);
    for_each_tuple(arity, alg.L_dim, [&](const std::vector<std::size_t>& T) {
      if (!r.passed || !weakly_sorted(f.degree, T)) return;
      Vec base = cochain_at(f.values, T, dM);
      for (std::size_t p = 0; p < arity && r.passed; ++p) {
        for (std::size_t q = 0; q < dA; ++q) {
          Vec aq = unit_vec(dA, q);
          std::vector<Vec> args;
          for (std::size_t pp = 0; pp < arity; ++pp) {
            args.push_back(pp == p ? alg.act(aq, unit_vec(alg.L_dim, T[pp]))
                                   : unit_vec(alg.L_dim, T[pp]));
          }
          Vec lhs = eval_cochain(f.values, dM, args);
          Vec rhs = mod.a_action.act(phi_pow.apply(aq), base);
          if (lhs != rhs) {
            std::vector<std::size_t> where = T;
            where.push_back(p);
            where.push_back(q);
            fail(r, where, vec_to_string(lhs), vec_to_string(rhs));
            break;
          }
        }
      }
    });
    report.conditions.push_back(std::move(r));
  }
  return report;
}

Cochain delta(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  check_cochain_shape(alg, mod, f);
  const std::size_t n = f.degree + 1;
  DeltaContext ctx = make_delta_context(alg, mod, n);
  Cochain out = zero_cochain(n, alg.L_dim, mod.dim);
  std::vector<std::size_t> idx(cochain_arity(n) + 1);
  for_each_tuple(cochain_arity(n), alg.L_dim, [&](const std::vector<std::size_t>& tuple) {
    Vec v = delta_value(ctx, f.values, tuple);
    if (vec_is_zero(v)) return;
    for (std::size_t p = 0; p < tuple.size(); ++p) idx[p] = tuple[p];
    for (std::size_t t = 0; t < mod.dim; ++t) {
      idx[tuple.size()] = t;
      out.values.at(idx) = v[t];
    }
  });
  return out;
}

namespace {

/// Reduced-coordinate image of delta on one basis cochain. Degrees <= 2 are
/// evaluated in full with a complete membership check; degree 3 evaluates on
/// canonical tuples plus signed and degenerate samples.
Vec delta_image_coords(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f,
                       const CochainSpaceBasis& out_space) {
  const std::size_t n = f.degree + 1;
  const CochainShape& shape = out_space.shape;
  if (n <= 2) {
    Cochain df = delta(alg, mod, f);
    VerificationReport membership = check_cochain(alg, mod, df);
    if (!membership.passed()) {
      const ConditionResult* why = membership.first_failure();
      throw ContainmentError("delta image fails " + why->name + ": " + why->describe(),
                             cochain_to_coords(shape, df));
    }
    return cochain_to_coords(shape, df);
  }
  DeltaContext ctx = make_delta_context(alg, mod, n);
  Vec reduced(shape.raw_dim());
  for (std::size_t r = 0; r < shape.canonical.size(); ++r) {
    const auto& T = shape.canonical[r];
    Vec v = delta_value(ctx, f.values, T);
    for (std::size_t t = 0; t < mod.dim; ++t) reduced[r * mod.dim + t] = v[t];

    // Signed samples: each adjacent transposition generator flips the sign.
    for (std::size_t g = 0; g + 1 < shape.arity(); ++g) {
      std::vector<std::size_t> swapped = T;
      std::swap(swapped[g], swapped[g + 1]);
      auto norm = shape.normalize(swapped);
      if (!norm || norm->second != r) continue;
      Vec sv = delta_value(ctx, f.values, swapped);
      Vec expect = norm->first > 0 ? v : vec_scaled(v, Rat(-1));
      if (sv != expect) {
        throw ContainmentError("delta image breaks the signed symmetry at a sampled tuple",
                               reduced);
      }
    }
    // Degenerate sample: repeating the first pair index must vanish.
    std::vector<std::size_t> degen = T;
    degen[1] = degen[0];
    if (!vec_is_zero(delta_value(ctx, f.values, degen))) {
      throw ContainmentError("delta image is nonzero on a degenerate tuple", reduced);
    }
  }
  return reduced;
}

}  // namespace

Matrix delta_matrix(const HLR3Algebra& alg, const LeftModule& mod, std::size_t n) {
  if (n == 0) throw std::invalid_argument("delta maps into degrees >= 1");
  CochainSpaceBasis in_space = cochain_space(alg, mod, n - 1);
  CochainSpaceBasis out_space = cochain_space(alg, mod, n);
  Matrix m(out_space.dim(), in_space.dim());
  for (std::size_t i = 0; i < in_space.dim(); ++i) {
    Cochain f = in_space.basis_cochain(i);
    Vec reduced = delta_image_coords(alg, mod, f, out_space);
    auto coeffs = out_space.express(reduced);
    if (!coeffs) {
      throw ContainmentError("delta image left the target cochain space", reduced);
    }
    for (std::size_t r = 0; r < out_space.dim(); ++r) m.at(r, i) = (*coeffs)[r];
  }
  return m;
}

CohomologyDims cohomology_dim(const HLR3Algebra& alg, const LeftModule& mod, std::size_t n) {
  CohomologyDims dims;
  CochainSpaceBasis space = cochain_space(alg, mod, n);
  dims.dim_c = space.dim();

  Matrix d_out = delta_matrix(alg, mod, n + 1);
  SubspaceBasis z = kernel(d_out);
  dims.dim_z = z.dim();

  SubspaceBasis b;
  b.ambient_dim = dims.dim_c;
  if (n > 0) {
    Matrix d_in = delta_matrix(alg, mod, n);
    RrefResult rr = rref(d_in.transposed());
    std::vector<Vec> image_basis;
    for (std::size_t r = 0; r < rr.rank; ++r) {
      Vec v(dims.dim_c);
      for (std::size_t c = 0; c < dims.dim_c; ++c) v[c] = rr.reduced.at(r, c);
      image_basis.push_back(std::move(v));
    }
    if (!image_basis.empty()) b = make_basis(dims.dim_c, std::move(image_basis));
  }
  dims.dim_b = b.dim();
  dims.dim_h = quotient_dim(b, z);
  return dims;
}

std::vector<Cochain> cocycle_basis(const HLR3Algebra& alg, const LeftModule& mod,
                                   std::size_t n) {
  CochainSpaceBasis space = cochain_space(alg, mod, n);
  SubspaceBasis z = kernel(delta_matrix(alg, mod, n + 1));
  std::vector<Cochain> out;
  for (const Vec& coeffs : z.vectors) {
    Vec reduced(space.shape.raw_dim());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Vec bi = space.basis_coords(i);
      for (std::size_t c = 0; c < reduced.size(); ++c) reduced[c] += coeffs[i] * bi[c];
    }
    out.push_back(cochain_from_coords(space.shape, reduced));
  }
  return out;
}

bool is_cocycle(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& f) {
  return delta(alg, mod, f).values.is_zero();
}

bool check_0cocycle_literal(const HLR3Algebra& alg, const LeftModule& mod, const Cochain& nu) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  if (nu.degree != 0) throw std::invalid_argument("expected a degree-0 cochain");
  check_cochain_shape(alg, mod, nu);
  const std::size_t dL = alg.L_dim;
  const std::size_t dM = mod.dim;
  auto nu_of = [&](const Vec& x) {
    std::vector<Vec> args{x};
    return eval_cochain(nu.values, dM, args);
  };
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j)
      for (std::size_t k = 0; k < dL; ++k) {
        Vec ei = unit_vec(dL, i), ej = unit_vec(dL, j), ek = unit_vec(dL, k);
        Vec total = mod.psi[i][j].apply(nu_of(ek));
        total = vec_add(total, mod.psi[i][k].apply(nu_of(ej)));
        total = vec_add(total, mod.psi[j][k].apply(nu_of(ei)));
        total = vec_sub(total, nu_of(alg.bracket_of(ei, ej, ek)));
        if (!vec_is_zero(total)) return false;
      }
  return true;
}

bool check_1cocycle_literal(const HLR3Algebra& alg, const LeftModule& mod,
                            const Cochain& omega) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  if (omega.degree != 1) throw std::invalid_argument("expected a degree-1 cochain");
  check_cochain_shape(alg, mod, omega);
  const std::size_t dL = alg.L_dim;
  const std::size_t dM = mod.dim;
  std::vector<Vec> acol;
  for (std::size_t i = 0; i < dL; ++i) acol.push_back(alg.alpha.apply(unit_vec(dL, i)));
  auto w = [&](const Vec& a, const Vec& b, const Vec& c) {
    std::vector<Vec> args{a, b, c};
    return eval_cochain(omega.values, dM, args);
  };
  for (std::size_t xi = 0; xi < dL; ++xi)
    for (std::size_t yi = 0; yi < dL; ++yi)
      for (std::size_t zi = 0; zi < dL; ++zi)
        for (std::size_t ui = 0; ui < dL; ++ui)
          for (std::size_t vi = 0; vi < dL; ++vi) {
            Vec x = unit_vec(dL, xi), y = unit_vec(dL, yi), z = unit_vec(dL, zi);
            Vec u = unit_vec(dL, ui), v = unit_vec(dL, vi);
            Vec total = w(alg.bracket_of(x, u, v), acol[yi], acol[zi]);
            total = vec_add(total, w(alg.bracket_of(y, u, v), acol[zi], acol[xi]));
            total = vec_add(total, w(acol[xi], acol[yi], alg.bracket_of(z, u, v)));
            total = vec_sub(total, w(alg.bracket_of(x, y, z), acol[ui], acol[vi]));
            total = vec_add(total, mod.psi_of(acol[yi], acol[zi]).apply(w(x, u, v)));
            total = vec_add(total, mod.psi_of(acol[zi], acol[xi]).apply(w(y, u, v)));
            total = vec_add(total, mod.psi_of(acol[xi], acol[yi]).apply(w(z, u, v)));
            total = vec_sub(total, mod.psi_of(acol[ui], acol[vi]).apply(w(x, y, z)));
            if (!vec_is_zero(total)) return false;
          }
  return true;
}

LeftModule make_trivial_module(const HLR3Algebra& alg) {
  if (alg.A.dim != 1) {
    throw std::invalid_argument("trivial module requires a one-dimensional base algebra");
  }
  LeftModule mod;
  mod.dim = 1;
  mod.a_action.dim = 1;
  mod.a_action.action = Tensor({1, 1, 1});
  mod.a_action.action.at({0, 0, 0}) = 1;
  mod.beta = Matrix::identity(1);
  mod.psi.assign(alg.L_dim, std::vector<Matrix>(alg.L_dim, Matrix(1, 1)));
  return mod;
}

LeftModule make_adjoint_module(const HLR3Algebra& alg) {
  LeftModule mod;
  mod.dim = alg.L_dim;
  mod.a_action = alg.a_action;
  mod.beta = alg.alpha;
  mod.psi.assign(alg.L_dim, std::vector<Matrix>(alg.L_dim, Matrix(alg.L_dim, alg.L_dim)));
  for (std::size_t i = 0; i < alg.L_dim; ++i)
    for (std::size_t j = 0; j < alg.L_dim; ++j)
      for (std::size_t k = 0; k < alg.L_dim; ++k)
        for (std::size_t l = 0; l < alg.L_dim; ++l) {
          mod.psi[i][j].at(l, k) = alg.bracket.at({i, j, k, l});
        }
  return mod;
}

LeftModule make_coefficients_module(const HLR3Algebra& alg) {
  LeftModule mod;
  mod.dim = alg.A.dim;
  mod.a_action.dim = alg.A.dim;
  mod.a_action.action = alg.A.mult;
  mod.beta = alg.A.phi;
  mod.psi = alg.anchor.rho;
  return mod;
}

LeftModule module_by_name(const HLR3Algebra& alg, const std::string& name) {
  if (name == "trivial") return make_trivial_module(alg);
  if (name == "adjoint") return make_adjoint_module(alg);
  if (name == "coefficients") return make_coefficients_module(alg);
  throw std::invalid_argument("unknown module: " + name);
}

VerificationReport module_check(const HLR3Algebra& alg, const LeftModule& mod) {
  validate_shapes(alg);
  validate_module_shapes(alg, mod);
  const std::size_t dL = alg.L_dim;
  const std::size_t dA = alg.A.dim;
  const std::size_t dM = mod.dim;
  VerificationReport report;
  report.conditions.push_back(check_module_unit(alg.A, mod.a_action, "a_module_unit"));
  report.conditions.push_back(check_module_assoc(alg.A, mod.a_action, "a_module_assoc"));

  std::vector<Vec> alpha_col;
  for (std::size_t i = 0; i < dL; ++i) alpha_col.push_back(alg.alpha.apply(unit_vec(dL, i)));
  std::vector<std::vector<Matrix>> both_alpha(dL, std::vector<Matrix>(dL, Matrix(dM, dM)));
  std::vector<std::vector<Matrix>> right_alpha(dL, std::vector<Matrix>(dL, Matrix(dM, dM)));
  std::vector<std::vector<Matrix>> left_alpha(dL, std::vector<Matrix>(dL, Matrix(dM, dM)));
  for (std::size_t i = 0; i < dL; ++i)
    for (std::size_t j = 0; j < dL; ++j) {
      both_alpha[i][j] = mod.psi_of(alpha_col[i], alpha_col[j]);
      right_alpha[i][j] = mod.psi_of(unit_vec(dL, i), alpha_col[j]);
      left_alpha[i][j] = mod.psi_of(alpha_col[i], unit_vec(dL, j));
    }
  auto bracket_slice = [&](std::size_t i, std::size_t j, std::size_t k) {
    Vec v(dL);
    for (std::size_t m = 0; m < dL; ++m) v[m] = alg.bracket.at({i, j, k, m});
    return v;
  };

  {
    ConditionResult r{.name = "psi_skew"};
    for (std::size_t i = 0; i < dL && r.passed; ++i)
      for (std::size_t j = 0; j < dL; ++j) {
        Matrix neg = mod.psi[j][i].scaled(Rat(-1));
        if (!(mod.psi[i][j] == neg)) {
          fail(r, {i, j}, matrix_to_string(mod.psi[i][j]), matrix_to_string(neg));
          break;
        }
      }
    report.conditions.push_back(std::move(r));
  }
  {
    ConditionResult r{.name = "psi_equivariance"};
    for (std::size_t i = 0; i < dL && r.passed; ++i)
      for (std::size_t j = 0; j < dL; ++j) {
        Matrix lhs = both_alpha[i][j] * mod.beta;
        Matrix rhs = mod.beta * mod.psi[i][j];
        if (!(lhs == rhs)) {
          fail(r, {i, j}, matrix_to_string(lhs), matrix_to_string(rhs));
          break;
        }
      }
    report.conditions.push_back(std::move(r));
  }

  auto bracket_right = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Matrix acc(dM, dM);
    Vec b = bracket_slice(i, j, k);
    for (std::size_t m = 0; m < dL; ++m) {
      if (b[m] == 0) continue;
      acc = acc + right_alpha[m][l].scaled(b[m]);
    }
    return acc * mod.beta;
  };
  auto bracket_left = [&](std::size_t k, std::size_t i, std::size_t j, std::size_t l) {
    Matrix acc(dM, dM);
    Vec b = bracket_slice(i, j, l);
    for (std::size_t m = 0; m < dL; ++m) {
      if (b[m] == 0) continue;
      acc = acc + left_alpha[k][m].scaled(b[m]);
    }
    return acc * mod.beta;
  };
  {
    ConditionResult r{.name = "rep_r1"};
    for (std::size_t i = 0; i < dL && r.passed; ++i)
      for (std::size_t j = 0; j < dL && r.passed; ++j)
        for (std::size_t k = 0; k < dL && r.passed; ++k)
          for (std::size_t l = 0; l < dL; ++l) {
            Matrix lhs = both_alpha[i][j] * mod.psi[k][l] + (both_alpha[k][l] * mod.psi[i][j]).scaled(Rat(-1));
            Matrix rhs = bracket_right(i, j, k, l) + bracket_left(k, i, j, l);
            if (!(lhs == rhs)) {
              fail(r, {i, j, k, l}, matrix_to_string(lhs), matrix_to_string(rhs));
              break;
            }
          }
    report.conditions.push_back(std::move(r));
  }
  {
    ConditionResult r{.name = "rep_r2"};
    for (std::size_t i = 0; i < dL && r.passed; ++i)
      for (std::size_t j = 0; j < dL && r.passed; ++j)
        for (std::size_t k = 0; k < dL && r.passed; ++k)
          for (std::size_t l = 0; l < dL; ++l) {
            Matrix lhs = bracket_right(i, j, k, l);
            Matrix rhs = both_alpha[i][j] * mod.psi[k][l] + both_alpha[j][k] * mod.psi[i][l] +
                         both_alpha[k][i] * mod.psi[j][l];
            if (!(lhs == rhs)) {
              fail(r, {i, j, k, l}, matrix_to_string(lhs), matrix_to_string(rhs));
              break;
            }
          }
    report.conditions.push_back(std::move(r));
  }
  {
    ConditionResult r{.name = "beta_compat"};
    for (std::size_t q = 0; q < dA && r.passed; ++q) {
      Vec aq = unit_vec(dA, q);
      Matrix lhs = mod.beta * mod.a_action.action_operator(aq);
      Matrix rhs = mod.a_action.action_operator(alg.A.phi.apply(aq)) * mod.beta;
      if (!(lhs == rhs)) fail(r, {q}, matrix_to_string(lhs), matrix_to_string(rhs));
    }
    report.conditions.push_back(std::move(r));
  }
  {
    ConditionResult r{.name = "psi_a_linearity"};
    Matrix phi2 = alg.A.phi.pow(2);
    for (std::size_t q = 0; q < dA && r.passed; ++q) {
      Vec aq = unit_vec(dA, q);
      Matrix scale = mod.a_action.action_operator(phi2.apply(aq));
      for (std::size_t i = 0; i < dL && r.passed; ++i)
        for (std::size_t j = 0; j < dL; ++j) {
          Vec moved_i = alg.act(aq, unit_vec(dL, i));
          Vec moved_j = alg.act(aq, unit_vec(dL, j));
          Matrix lhs_left = mod.psi_of(moved_i, unit_vec(dL, j));
          Matrix lhs_right = mod.psi_of(unit_vec(dL, i), moved_j);
          Matrix rhs = scale * mod.psi[i][j];
          if (!(lhs_left == rhs) || !(lhs_right == rhs)) {
            Matrix shown = lhs_left == rhs ? lhs_right : lhs_left;
            fail(r, {q, i, j}, matrix_to_string(shown), matrix_to_string(rhs));
            break;
          }
        }
    }
    report.conditions.push_back(std::move(r));
  }
  {
    ConditionResult r{.name = "psi_leibniz"};
    Matrix phi2 = alg.A.phi.pow(2);
    Matrix beta2 = mod.beta.pow(2);
    for (std::size_t q = 0; q < dA && r.passed; ++q) {
      Vec aq = unit_vec(dA, q);
      Matrix act_a = mod.a_action.action_operator(aq);
      Matrix act_phi2 = mod.a_action.action_operator(phi2.apply(aq));
      for (std::size_t i = 0; i < dL && r.passed; ++i)
        for (std::size_t j = 0; j < dL; ++j) {
          Matrix lhs = mod.psi[i][j] * act_a;
          Matrix rhs = act_phi2 * mod.psi[i][j] +
                       mod.a_action.action_operator(alg.anchor.rho[i][j].apply(aq)) * beta2;
          if (!(lhs == rhs)) {
            fail(r, {q, i, j}, matrix_to_string(lhs), matrix_to_string(rhs));
            break;
          }
        }
    }
    report.conditions.push_back(std::move(r));
  }
  return report;
}

}  // namespace hlr3
