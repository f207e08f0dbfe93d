#include "hkcob/operators.hpp"

#include "hkcob/koszul.hpp"

#include <mutex>
#include <stdexcept>

namespace hkcob {

Rational correction_sum_of_squares(const GeneralizedPartition& lambda) {
  Rational s = 0;
  for (int p : lambda.parts()) s += p * p;
  return s;
}

Rational correction_sum_of_abs(const GeneralizedPartition& lambda) {
  Rational s = 0;
  for (int p : lambda.parts()) s += (p < 0 ? -p : p);
  return s;
}

Rational correction_length(const GeneralizedPartition& lambda) { return lambda.length(); }

CorrectionFunction correction_by_name(const std::string& name) {
  if (name == "sum_squares") return correction_sum_of_squares;
  if (name == "sum_abs") return correction_sum_of_abs;
  if (name == "length") return correction_length;
  throw std::invalid_argument("unknown correction function '" + name + "'");
}

struct OperatorAlgebra::Contraction {
  int count = 0;
  int weight = 0;
  std::vector<int> parts;  // indices of the annihilated factors, non-increasing
  Rational coeff;          // choice multiplicity * Koszul sign * prod(-m)
  GradedClass product;     // product of the annihilated classes in monomial order
  Monomial rest;
};

struct OperatorAlgebra::Cache {
  std::mutex mu;
  std::map<std::pair<int, Partition>, Fragment> fragments;
  std::map<std::pair<int, int>, std::vector<Partition>> by_length;
};

OperatorAlgebra::OperatorAlgebra(const SurfaceModel& model, CorrectionFunction s)
    : fock_(model), s_(std::move(s)), cache_(std::make_shared<Cache>()) {
  if (!s_) throw std::invalid_argument("correction function must be callable");
}

void OperatorAlgebra::check_c1() const {
  if (!model().c1_zero()) throw std::domain_error("G_d expansion requires a surface with c1 = 0");
}

namespace {

std::vector<Partition> partitions_with_length(int w, int r) {
  std::vector<Partition> out;
  if (r < 0 || w < r) return out;
  for (auto& p : partitions_of(w))
    if (p.length() == r) out.push_back(std::move(p));
  return out;
}

}  // namespace

template <class Fn>
void OperatorAlgebra::for_each_contraction(const Monomial& m, Fn&& fn) const {
  const SurfaceModel& s = model();
  const int size = m.size();
  std::uint8_t keys[Monomial::kMaxFactors];
  int counts[Monomial::kMaxFactors];
  int distinct = 0;
  for (int i = 0; i < size; ++i) {
    if (distinct > 0 && keys[distinct - 1] == m.key(i)) {
      ++counts[distinct - 1];
    } else {
      keys[distinct] = m.key(i);
      counts[distinct] = 1;
      ++distinct;
    }
  }
  int take[Monomial::kMaxFactors] = {};
  Contraction c;
  while (true) {
    c.count = 0;
    c.weight = 0;
    c.parts.clear();
    c.coeff = 1;
    c.product = s.unit();
    std::uint8_t rest[Monomial::kMaxFactors];
    int nrest = 0;
    int odd_unchosen = 0;
    for (int i = 0; i < distinct; ++i) {
      const Factor f = Monomial::factor_of(keys[i]);
      const bool odd = fock_.odd_key(keys[i]);
      if (take[i] > 0) {
        c.coeff *= Rational(binomial(counts[i], take[i]));
        for (int t = 0; t < take[i]; ++t) {
          if (odd && (odd_unchosen & 1)) c.coeff = -c.coeff;
          c.coeff *= -f.m;
          c.product = s.cup(c.product, s.basis_class(f.basis));
          c.parts.push_back(f.m);
          c.weight += f.m;
          ++c.count;
        }
      }
      for (int t = take[i]; t < counts[i]; ++t) {
        rest[nrest++] = keys[i];
        if (odd) ++odd_unchosen;
      }
    }
    if (!c.product.is_zero()) {
      c.rest = Monomial::from_sorted_keys(std::span<const std::uint8_t>(rest, static_cast<std::size_t>(nrest)));
      fn(static_cast<const Contraction&>(c));
    }
    int i = 0;
    while (i < distinct && take[i] == counts[i]) take[i++] = 0;
    if (i == distinct) break;
    ++take[i];
  }
}

const OperatorAlgebra::Fragment& OperatorAlgebra::creation_fragment(int basis_index, const Partition& mu) const {
  std::lock_guard lock(cache_->mu);
  auto key = std::make_pair(basis_index, mu);
  if (auto it = cache_->fragments.find(key); it != cache_->fragments.end()) return it->second;
  for (int p : mu.parts())
    if (p > Monomial::kMaxPart) throw std::out_of_range("creation index out of supported range 1..7");
  const int r = mu.length();
  std::unordered_map<Monomial, Rational> acc;
  std::vector<std::uint8_t> word(static_cast<std::size_t>(r));
  for (const auto& term : model().small_diagonal_push_basis(r, basis_index)) {
    for (int i = 0; i < r; ++i)
      word[static_cast<std::size_t>(i)] = Monomial::key_of({mu[i], term.slots[static_cast<std::size_t>(i)]});
    auto ordered = fock_.normal_order(std::span<std::uint8_t>(word));
    if (!ordered) continue;
    acc[ordered->second] += term.coeff * ordered->first;
  }
  Fragment frag;
  for (auto& [w, c] : acc)
    if (c != 0) frag.emplace_back(w, c);
  return cache_->fragments.emplace(key, std::move(frag)).first->second;
}

void OperatorAlgebra::add_created(FockState& out, const Partition& mu, const GradedClass& cls, const Monomial& rest,
                                  const Rational& coeff) const {
  std::uint8_t front[Monomial::kMaxFactors];
  for (const auto& [b, xb] : cls.terms()) {
    for (const auto& [word, c] : creation_fragment(b, mu)) {
      const int len = word.size();
      for (int i = 0; i < len; ++i) front[i] = word.key(i);
      auto merged = fock_.merge(std::span<const std::uint8_t>(front, static_cast<std::size_t>(len)), rest);
      if (merged) out.add(merged->second, coeff * xb * c * merged->first);
    }
  }
}

FockState OperatorAlgebra::apply_q_lambda(const GeneralizedPartition& lambda, const GradedClass& gamma,
                                          const FockState& s) const {
  if (lambda.length() < 1) throw std::invalid_argument("q_lambda needs at least one part");
  const Partition mu = lambda.positive_part();
  const Partition nu = lambda.negative_part();
  const Rational nu_fact(nu.multiplicity_factorial());
  FockState out;
  for (const auto& [mono, coeff] : s.terms()) {
    for_each_contraction(mono, [&](const Contraction& k) {
      if (k.parts != nu.parts()) return;
      add_created(out, mu, model().cup(gamma, k.product), k.rest, coeff * k.coeff * nu_fact);
    });
  }
  return out;
}

FockState OperatorAlgebra::apply_q_lambda_literal(const GeneralizedPartition& lambda, const GradedClass& gamma,
                                                  const FockState& s) const {
  const int len = lambda.length();
  FockState out;
  for (const auto& term : model().small_diagonal_push(len, gamma)) {
    FockState t = s;
    for (int i = len - 1; i >= 0 && !t.is_zero(); --i)
      t = apply_q(fock_, lambda.parts()[static_cast<std::size_t>(i)],
                  model().basis_class(term.slots[static_cast<std::size_t>(i)]), t);
    out.add_scaled(t, term.coeff);
  }
  return out;
}

FockState OperatorAlgebra::apply_G(int d, const GradedClass& gamma, const FockState& s) const {
  check_c1();
  FockState out;
  if (d < 0 || d == 1) return out;
  const SurfaceModel& m = model();
  const bool correction = m.euler_number() != 0 && d >= 2;
  auto lengths = [this](int w, int r) -> const std::vector<Partition>& {
    std::lock_guard lock(cache_->mu);
    auto key = std::make_pair(w, r);
    auto it = cache_->by_length.find(key);
    if (it == cache_->by_length.end()) it = cache_->by_length.emplace(key, partitions_with_length(w, r)).first;
    return it->second;
  };
  for (const auto& [mono, coeff] : s.terms()) {
    for_each_contraction(mono, [&](const Contraction& k) {
      const GradedClass gb = m.cup(gamma, k.product);
      if (gb.is_zero()) return;
      const int r1 = d - k.count;
      if (r1 >= 0)
        for (const auto& mu : lengths(k.weight, r1))
          add_created(out, mu, gb, k.rest, -coeff * k.coeff / Rational(mu.multiplicity_factorial()));
      const int r2 = d - 2 - k.count;
      if (correction && r2 >= 0) {
        const GradedClass gbe = m.cup(gb, m.euler_class());
        if (gbe.is_zero()) return;
        for (const auto& mu : lengths(k.weight, r2)) {
          Rational sl = s_(GeneralizedPartition(mu, Partition(k.parts)));
          if (sl == 0) continue;
          add_created(out, mu, gbe, k.rest, coeff * k.coeff * sl / (24 * Rational(mu.multiplicity_factorial())));
        }
      }
    });
  }
  return out;
}

FockState OperatorAlgebra::apply_G_literal(int d, const GradedClass& gamma, const FockState& s, int part_cap) const {
  check_c1();
  FockState out;
  if (d < 0) return out;
  for (const auto& lambda : generalized_partitions(d, 0, part_cap))
    out.add_scaled(apply_q_lambda_literal(lambda, gamma, s), -1 / Rational(lambda.factorial()));
  if (d >= 2 && model().euler_number() != 0) {
    const GradedClass ge = model().cup(gamma, model().euler_class());
    for (const auto& lambda : generalized_partitions(d - 2, 0, part_cap))
      out.add_scaled(apply_q_lambda_literal(lambda, ge, s), s_(lambda) / (24 * Rational(lambda.factorial())));
  }
  return out;
}

FockState OperatorAlgebra::apply_mult_ch(int k, const FockState& s) const {
  if (k < 1) throw std::invalid_argument("mult_ch_k requires k >= 1");
  check_c1();
  const SurfaceModel& m = model();
  // Delta = sum_l b_l x delta_l
  std::map<int, GradedClass> right_of;
  for (const auto& t : m.diagonal_pairs()) right_of[t.slots[0]].add(t.slots[1], t.coeff);

  FockState out;
  for (int j = 0; j <= k + 2; ++j) {
    const int i = k + 2 - j;
    if (i == 1 || j == 1) continue;
    const Rational sign = sign_power(j + 1);
    for (const auto& [l, delta] : right_of) {
      FockState inner = apply_G(j, delta, s);
      if (inner.is_zero()) continue;
      out.add_scaled(apply_G(i, m.basis_class(l), inner), sign);
    }
  }
  if (m.c2() != 0) {
    const Rational scale = m.c2() / 12;
    for (int j = 0; j <= k; ++j) {
      const int i = k - j;
      if (i == 1 || j == 1) continue;
      FockState inner = apply_G(j, m.point(), s);
      if (inner.is_zero()) continue;
      out.add_scaled(apply_G(i, m.point(), inner), scale * sign_power(j + 1));
    }
  }
  return out;
}

namespace {

std::vector<int> generator_indices(const SurfaceModel& model) {
  return {model.index_of("a1"), model.index_of("a2"), model.index_of("a3"), model.index_of("a4")};
}

}  // namespace

FockState kummer_class(const OperatorAlgebra& ops, int n) {
  if (n < 1) throw std::invalid_argument("kummer_class: n must be >= 1");
  const auto gens = generator_indices(ops.model());
  FockState s = unit_class(ops.fock(), n + 1);
  for (int i = 3; i >= 0; --i) s = ops.apply_G(2, ops.model().basis_class(gens[static_cast<std::size_t>(i)]), s);
  return s;
}

FockState kummer_class_by_set_partitions(const FockSpace& fock, int n) {
  if (n < 1) throw std::invalid_argument("kummer_class: n must be >= 1");
  const SurfaceModel& model = fock.model();
  const auto gens = generator_indices(model);
  FockState out;
  for (const auto& blocks : set_partitions(4)) {
    const int len = static_cast<int>(blocks.size());
    if (len > n + 1) continue;
    std::vector<int> order;
    std::vector<Factor> factors;
    Rational coeff = inverse_factorial(n + 1 - len);
    for (const auto& block : blocks) {
      GradedClass cls = model.unit();
      for (int x : block) {
        cls = model.cup(cls, model.basis_class(gens[static_cast<std::size_t>(x)]));
        order.push_back(x);
      }
      // a product of distinct generators is a signed basis element
      const auto& [index, c] = *cls.terms().begin();
      coeff *= c;
      factors.push_back({1, index});
    }
    coeff *= koszul_sort(std::span<int>(order), std::less<>(), [](int) { return true; });
    for (int i = 0; i < n + 1 - len; ++i) factors.push_back({1, model.unit_index()});
    auto ordered = fock.normal_order(factors);
    if (ordered) out.add(ordered->second, coeff * ordered->first);
  }
  return out;
}

}  // namespace hkcob
