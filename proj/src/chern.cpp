#include "hkcob/chern.hpp"

#include <stdexcept>

namespace hkcob {

// ------------------------------------------------------------ ChernVector

Rational ChernVector::value(const Partition& kappa) const {
  if (kappa.size() != dim)
    throw std::invalid_argument("monomial ch_{" + kappa.to_string() + "} has degree " +
                                std::to_string(kappa.size()) + ", expected " + std::to_string(dim));
  if (even_only && !kappa.all_parts_even()) return 0;
  auto it = ch.find(kappa);
  if (it == ch.end()) throw std::invalid_argument("Chern vector lacks the value of ch_{" + kappa.to_string() + "}");
  return it->second;
}

void ChernVector::validate() const {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  for (const auto& kappa : partitions_of(dim)) {
    if (even_only && !kappa.all_parts_even()) continue;
    if (!ch.count(kappa)) throw std::invalid_argument("Chern vector lacks ch_{" + kappa.to_string() + "}");
  }
}

ChernVector unit_chern_vector() {
  ChernVector v;
  v.dim = 0;
  v.ch[Partition{}] = 1;
  v.label = "pt";
  return v;
}

namespace {

Rational factorial_product(const Partition& p) {
  Integer f = 1;
  for (int part : p.parts()) f *= factorial(part);
  return Rational(f);
}

}  // namespace

std::map<Partition, Rational> ch_to_c(const ChernVector& v) {
  std::map<Partition, Rational> out;
  if (v.dim == 0) {
    out[Partition{}] = v.value(Partition{});
    return out;
  }
  const auto& e_to_p = elementary_to_power(v.dim);
  for (const auto& nu : partitions_of(v.dim)) {
    if (v.even_only && !nu.all_parts_even()) continue;
    Rational total = 0;
    for (const auto& [kappa, coeff] : e_to_p.at(nu).coefficients) {
      if (v.even_only && !kappa.all_parts_even()) continue;
      total += coeff * factorial_product(kappa) * v.value(kappa);
    }
    out[nu] = total;
  }
  return out;
}

ChernVector c_to_ch(int dim, const std::map<Partition, Rational>& c_values, bool even_only, std::string label) {
  ChernVector v;
  v.dim = dim;
  v.even_only = even_only;
  v.label = std::move(label);
  if (dim == 0) {
    auto it = c_values.find(Partition{});
    v.ch[Partition{}] = it == c_values.end() ? Rational(0) : it->second;
    return v;
  }
  const auto& p_to_e = power_to_elementary(dim);
  for (const auto& kappa : partitions_of(dim)) {
    if (even_only && !kappa.all_parts_even()) continue;
    Rational total = 0;
    for (const auto& [nu, coeff] : p_to_e.at(kappa).coefficients) {
      if (even_only && !nu.all_parts_even()) continue;
      auto it = c_values.find(nu);
      if (it != c_values.end()) total += coeff * it->second;
    }
    v.ch[kappa] = total / factorial_product(kappa);
  }
  return v;
}

// ----------------------------------------------------------- closed forms

Rational closed_form_hilb_top(int n, const Rational& c2) {
  if (n < 1) throw std::invalid_argument("closed_form_hilb_top: n >= 1 required");
  Integer nf = factorial(n);
  return sign_power(n) * c2 / 24 * Rational(factorial(2 * n + 2)) / Rational(nf * nf * nf * nf * (2 * n - 1));
}

Rational closed_form_kummer_top(int n) {
  if (n < 1) throw std::invalid_argument("closed_form_kummer_top: n >= 1 required");
  Integer nf = factorial(n);
  return sign_power(n) * Rational(factorial(2 * n + 2)) / Rational(nf * nf * nf * nf);
}

Rational closed_form_kummer_double(int n, int k) {
  if (n < 2 || k <= 0 || k >= n) throw std::invalid_argument("closed_form_kummer_double: need 0 < k < n");
  Rational sum = 0;
  for (int i = 0; i <= k; ++i) {
    Rational t = inverse_factorial(k - i) * inverse_factorial(k + i + 1) * inverse_factorial(n - k - i) *
                 inverse_factorial(n - k + i + 1);
    sum += (2 * i + 1) * t * t;
  }
  Rational np1 = n + 1;
  return 4 * sign_power(n) * np1 * np1 * np1 * np1 * Rational(factorial(2 * k + 1)) *
         Rational(factorial(2 * n - 2 * k + 1)) * sum;
}

// ------------------------------------------------------------------ genera

Rational bernoulli(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli: k >= 0 required");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= k) {
    const int m = static_cast<int>(table.size());
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * table[static_cast<std::size_t>(j)];
    table.push_back(-s / (m + 1));
  }
  return table[static_cast<std::size_t>(k)];
}

CharacteristicSeries todd_series() {
  return {"todd", [](int k) { return YPolynomial(sign_power(k) * bernoulli(k) * inverse_factorial(k)); }};
}

CharacteristicSeries chi_y_series() {
  return {"chi_y", [](int k) {
            YPolynomial one_plus_y(std::vector<Rational>{1, 1});
            YPolynomial power(Rational(1));
            for (int i = 0; i < k; ++i) power *= one_plus_y;
            YPolynomial q = power * (sign_power(k) * bernoulli(k) * inverse_factorial(k));
            if (k == 1) q -= YPolynomial::y();
            return q;
          }};
}

GenusPolynomial genus_polynomial(const CharacteristicSeries& series, int dim) {
  if (dim < 0) throw std::invalid_argument("genus_polynomial: negative dimension");
  if (series.coefficient(0) != YPolynomial(Rational(1))) throw std::invalid_argument("series must start with 1");
  GenusPolynomial g;
  g.dim = dim;
  g.name = series.name;
  if (dim == 0) {
    g.coefficients[Partition{}] = YPolynomial(Rational(1));
    return g;
  }
  // log Q = sum_m (-1)^{m+1} u^m / m with u = Q - 1
  std::vector<YPolynomial> u(static_cast<std::size_t>(dim + 1)), power(static_cast<std::size_t>(dim + 1)),
      log_q(static_cast<std::size_t>(dim + 1));
  for (int k = 1; k <= dim; ++k) u[static_cast<std::size_t>(k)] = series.coefficient(k);
  power = u;
  for (int m = 1; m <= dim; ++m) {
    for (int k = 1; k <= dim; ++k) log_q[static_cast<std::size_t>(k)] += power[static_cast<std::size_t>(k)] * (sign_power(m + 1) / m);
    std::vector<YPolynomial> next(static_cast<std::size_t>(dim + 1));
    for (int a = 1; a <= dim; ++a)
      for (int b = 1; a + b <= dim; ++b)
        next[static_cast<std::size_t>(a + b)] += power[static_cast<std::size_t>(a)] * u[static_cast<std::size_t>(b)];
    power = std::move(next);
  }
  // prod Q(x_i) = exp(sum_k a_k p_k); degree-dim part is sum_kappa prod a / mult! p_kappa
  const auto& p_to_e = power_to_elementary(dim);
  for (const auto& kappa : partitions_of(dim)) {
    YPolynomial coeff(Rational(1));
    for (int part : kappa.parts()) coeff *= log_q[static_cast<std::size_t>(part)];
    coeff *= Rational(1) / Rational(kappa.multiplicity_factorial());
    if (coeff.is_zero()) continue;
    for (const auto& [nu, c] : p_to_e.at(kappa).coefficients) g.coefficients[nu] += coeff * c;
  }
  std::erase_if(g.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return g;
}

GenusPolynomial milnor_genus_polynomial(int dim) {
  if (dim < 1) throw std::invalid_argument("milnor genus needs dim >= 1");
  GenusPolynomial g;
  g.dim = dim;
  g.name = "milnor";
  for (const auto& [nu, c] : power_to_elementary(dim).at(Partition{dim}).coefficients)
    g.coefficients[nu] = YPolynomial(c * inverse_factorial(dim));
  return g;
}

YPolynomial evaluate_genus(const GenusPolynomial& g, const ChernVector& v) {
  if (g.dim != v.dim)
    throw std::invalid_argument("genus of degree " + std::to_string(g.dim) + " applied to dimension " +
                                std::to_string(v.dim));
  const auto c = ch_to_c(v);
  YPolynomial total;
  for (const auto& [nu, coeff] : g.coefficients) {
    auto it = c.find(nu);
    if (it != c.end()) total += coeff * it->second;
  }
  return total;
}

std::vector<Rational> signed_hodge_euler_list(const YPolynomial& chi_y) {
  std::vector<Rational> out;
  for (int p = 0; p <= chi_y.degree(); ++p) out.push_back(sign_power(p) * chi_y[p]);
  return out;
}

// ---------------------------------------------------------- SurfaceChoice

SurfaceChoice SurfaceChoice::of(std::shared_ptr<const SurfaceModel> m) {
  SurfaceChoice c;
  c.kind = Kind::model;
  c.model = std::move(m);
  return c;
}

SurfaceChoice SurfaceChoice::generic_c2(const Rational& c2) {
  SurfaceChoice c;
  c.kind = Kind::generic_c2;
  c.c2 = c2;
  return c;
}

std::string SurfaceChoice::describe() const {
  switch (kind) {
    case Kind::k3: return "k3";
    case Kind::model: return model->name();
    case Kind::generic_c2: return "c2=" + to_string(c2);
  }
  return {};
}

// ------------------------------------------------------------- ChernEngine

struct ChernEngine::Context {
  std::shared_ptr<const SurfaceModel> model;
  std::unique_ptr<OperatorAlgebra> ops;
  std::string store_prefix;
  std::mutex mu;
  std::map<std::string, FockState> memo;
};

ChernEngine::ChernEngine(CorrectionFunction s, std::string s_name) : s_(std::move(s)), s_name_(std::move(s_name)) {}

ChernEngine::~ChernEngine() = default;

ChernEngine::Context& ChernEngine::context_for(const std::string& key,
                                               const std::function<std::shared_ptr<const SurfaceModel>()>& make) {
  std::lock_guard lock(mu_);
  auto it = contexts_.find(key);
  if (it != contexts_.end()) return *it->second;
  auto ctx = std::make_unique<Context>();
  ctx->model = make();
  ctx->ops = std::make_unique<OperatorAlgebra>(*ctx->model, s_);
  ctx->store_prefix = ctx->model->fingerprint() + "|s=" + s_name_ + "|";
  return *contexts_.emplace(key, std::move(ctx)).first->second;
}

Rational ChernEngine::run(Context& ctx, const FockState& start, const std::string& start_key, int weight,
                          const Partition& ks) {
  const auto& parts = ks.parts();
  FockState cur = start;
  std::string key = start_key;
  for (std::size_t j = 0; j + 1 < parts.size(); ++j) {
    key += ";ch" + std::to_string(2 * parts[j]);
    bool found = false;
    {
      std::lock_guard lock(ctx.mu);
      if (auto it = ctx.memo.find(key); it != ctx.memo.end()) {
        cur = it->second;
        found = true;
      }
    }
    if (!found && store_) {
      if (auto loaded = store_->load(ctx.store_prefix + key)) {
        cur = std::move(*loaded);
        found = true;
      }
    }
    if (!found) {
      cur = ctx.ops->apply_mult_ch(2 * parts[j], cur);
      if (store_) store_->save(ctx.store_prefix + key, cur);
    }
    std::lock_guard lock(ctx.mu);
    ctx.memo.emplace(key, cur);
  }
  return integrate(ctx.ops->fock(), ctx.ops->apply_mult_ch(2 * parts.back(), cur), weight);
}

namespace {

void check_partition(int n, const Partition& ks) {
  if (n < 1) throw std::invalid_argument("n >= 1 required");
  if (ks.size() != n)
    throw std::invalid_argument("partition " + ks.to_string() + " does not sum to " + std::to_string(n));
}

}  // namespace

Rational ChernEngine::hilb_on_model(int n, const Partition& ks, const std::shared_ptr<const SurfaceModel>& model,
                                    const std::string& key) {
  Context& ctx = context_for(key, [&] { return model; });
  return run(ctx, unit_class(ctx.ops->fock(), n), "unit:" + std::to_string(n), n, ks);
}

Rational ChernEngine::hilb_ch_number(int n, const Partition& ks, const SurfaceChoice& surface) {
  check_partition(n, ks);
  switch (surface.kind) {
    case SurfaceChoice::Kind::k3: {
      Context& ctx = context_for("k3", [] { return std::make_shared<const SurfaceModel>(SurfaceModel::k3()); });
      return hilb_on_model(n, ks, ctx.model, "k3");
    }
    case SurfaceChoice::Kind::model:
      if (!surface.model) throw std::invalid_argument("surface choice without a model");
      if (!surface.model->c1_zero()) throw std::domain_error("Hilbert-scheme pipeline requires c1 = 0");
      return hilb_on_model(n, ks, surface.model, "model:" + surface.model->fingerprint());
    case SurfaceChoice::Kind::generic_c2: {
      // polynomial of degree <= n in c2; n + 1 nodes plus one node as a consistency check
      const int nodes = interpolation_degree(n) + 1;
      std::vector<Rational> xs, ys;
      for (int b2 = 0; b2 <= nodes; ++b2) {
        auto key = "even_b2=" + std::to_string(b2);
        Context& ctx = context_for(key, [b2] { return std::make_shared<const SurfaceModel>(SurfaceModel::even_surface(b2)); });
        xs.push_back(ctx.model->c2());
        ys.push_back(hilb_on_model(n, ks, ctx.model, key));
      }
      auto lagrange = [&](const Rational& x) {
        Rational total = 0;
        for (int i = 0; i < nodes; ++i) {
          Rational term = ys[static_cast<std::size_t>(i)];
          for (int j = 0; j < nodes; ++j)
            if (j != i) term *= (x - xs[static_cast<std::size_t>(j)]) / (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]);
          total += term;
        }
        return total;
      };
      if (lagrange(xs.back()) != ys.back())
        throw std::logic_error("c2 interpolation check failed: values are not polynomial of the expected degree");
      return lagrange(surface.c2);
    }
  }
  throw std::logic_error("unreachable surface kind");
}

Rational ChernEngine::kummer_ch_number(int n, const Partition& ks) {
  check_partition(n, ks);
  Context& ctx = context_for("abelian", [] { return std::make_shared<const SurfaceModel>(SurfaceModel::abelian()); });
  const std::string start_key = "kum:" + std::to_string(n);
  std::optional<FockState> start;
  {
    std::lock_guard lock(ctx.mu);
    if (auto it = ctx.memo.find(start_key); it != ctx.memo.end()) start = it->second;
  }
  if (!start) {
    start = kummer_class(*ctx.ops, n);
    std::lock_guard lock(ctx.mu);
    ctx.memo.emplace(start_key, *start);
  }
  return run(ctx, *start, start_key, n + 1, ks);
}

ChernVector ChernEngine::hilb_vector(int n, const SurfaceChoice& surface) {
  ChernVector v;
  v.dim = 2 * n;
  v.label = "hilb" + std::to_string(n) + "[" + surface.describe() + "]";
  for (const auto& ks : partitions_of(n)) v.ch[ks.scaled(2)] = hilb_ch_number(n, ks, surface);
  return v;
}

ChernVector ChernEngine::kummer_vector(int n) {
  ChernVector v;
  v.dim = 2 * n;
  v.label = "kummer" + std::to_string(n);
  for (const auto& ks : partitions_of(n)) v.ch[ks.scaled(2)] = kummer_ch_number(n, ks);
  return v;
}

}  // namespace hkcob
