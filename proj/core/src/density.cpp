#include "sigmabias/density.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "sigmabias/checkpoint.hpp"
#include "sigmabias/errors.hpp"
#include "sigmabias/parallel.hpp"
#include "sigmabias/version.hpp"

namespace sigmabias {

namespace {

using u128 = unsigned __int128;

void mpz_set_u128(mpz_class& dst, u128 v) {
  mpz_set_ui(dst.get_mpz_t(), static_cast<unsigned long>(v >> 64));
  mpz_mul_2exp(dst.get_mpz_t(), dst.get_mpz_t(), 64);
  mpz_add_ui(dst.get_mpz_t(), dst.get_mpz_t(), static_cast<unsigned long>(v));
}

u128 mpz_get_u128(const mpz_class& v) {
  mpz_class hi = v >> 64;
  mpz_class lo = v - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

std::uint64_t sigma_u64(std::span<const PrimePower> factors) {
  std::uint64_t s = 1;
  for (const auto& [p, e] : factors) {
    std::uint64_t term = 1, pk = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      pk *= p;
      term += pk;
    }
    s *= term;
  }
  return s;
}

}  // namespace

PairContext::PairContext(std::uint64_t modulus, std::uint64_t smooth_y)
    : modulus_(modulus), smooth_y_(smooth_y) {
  if (modulus < 2 || modulus % 2 != 0)
    throw ConfigError("modulus must be even (one of mn, mn+1 would otherwise carry the factor 2)");
  primes_ = primes_up_to(smooth_y);
  Factored mfac = default_factorizer().factorize(modulus);
  mconst_ = 1;
  for (const auto& [p, e] : mfac.factors) {
    if (e > 1) throw ConfigError("modulus must be squarefree");
    if (p > smooth_y) throw ConfigError("modulus has a prime factor above the smoothness bound");
    modulus_primes_.push_back(p);
    mconst_ *= p - 1;
  }
  base_ = 1;
  primorial_ = 1;
  for (const std::uint64_t p : primes_) {
    primorial_ *= static_cast<unsigned long>(p);
    if (modulus % p != 0)
      base_ *= make_rational(BigInt(p) - 2, BigInt(p));
  }
}

BigRational pair_density(const PairContext& ctx, const Factored& a, const Factored& b) {
  if (!is_smooth(a, ctx.smooth_y()) || !is_smooth(b, ctx.smooth_y()))
    throw std::invalid_argument("pair_density: a and b must be y-smooth");
  if (b.value % ctx.modulus() != 0) return BigRational(0);
  if (std::gcd(a.value, b.value) != 1) return BigRational(0);
  // m/(ab) * prod_{p|ab}(1-1/p) * prod_{p<=y, p∤ab}(1-2/p)
  //   = base * mconst * prod_{p|ab, p∤m} (p-1)/(p-2) / (ab)
  BigRational ds = ctx.base() * BigRational(static_cast<unsigned long>(ctx.mconst()));
  for (const Factored* f : {&a, &b}) {
    for (const auto& [p, e] : f->factors) {
      if (ctx.modulus() % p == 0) continue;
      ds *= make_rational(BigInt(p) - 1, BigInt(p) - 2);
    }
  }
  ds /= make_rational(BigInt(a.value) * BigInt(b.value), 1);
  return ds;
}

ClassProgression class_progression(const PairContext& ctx, std::uint64_t a, std::uint64_t b,
                                   const BigInt& t1, const BigInt& t2) {
  const BigInt& P = ctx.primorial();
  if (t1 < 1 || t1 > P || t2 < 1 || t2 > P)
    throw std::invalid_argument("class_progression: t1, t2 must lie in [1, P]");
  BigInt g;
  BigInt t1t2 = t1 * t2;
  mpz_gcd(g.get_mpz_t(), t1t2.get_mpz_t(), P.get_mpz_t());
  if (g != 1) throw std::invalid_argument("class_progression: gcd(t1*t2, P) must be 1");
  if (b % ctx.modulus() != 0 || std::gcd(a, b) != 1) return {};  // S(a,b) itself is empty

  const BigInt A(static_cast<unsigned long>(a));
  const BigInt B(static_cast<unsigned long>(b));
  BigInt u = 1 - A * t1 + B * t2;
  if (u % P != 0) return {};
  const BigInt ell = u / P;

  // particular solution of a*x - b*y = 1
  BigInt s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  // g == 1; a*s + b*t == 1, so (x0, y0) = (s, -t)
  const BigInt x0 = s;

  const BigInt m(static_cast<unsigned long>(ctx.modulus()));
  BigInt w = A * (t1 + x0 * P * ell);  // w = mn + 1 for members of the class
  BigInt mn = w - 1;                   // divisible by m: w - 1 = b*(t2 + y0*P*ell)
  if (mn % m != 0) throw std::logic_error("class_progression: internal divisibility violated");
  const BigInt period = A * B * P / m;
  BigInt residue = (mn / m) % period;
  if (residue < 0) residue += period;
  return {false, period, residue};
}

Enclosure lambda_constant(std::span<const std::uint64_t> k_primes, unsigned r,
                          const LambdaParams& params) {
  if (r == 0) throw std::invalid_argument("lambda_constant: exponent must be >= 1");
  for (std::size_t i = 0; i < k_primes.size(); ++i) {
    if (k_primes[i] < 2 || (i > 0 && k_primes[i] <= k_primes[i - 1]))
      throw std::invalid_argument("lambda_constant: k primes must be distinct and ascending");
  }
  if (r >= 2) return lambda_euler_product(k_primes, r, params);
  // Lambda_k(1) = zeta(2) * prod_{p|k} (1 - 1/p^2), exactly
  const Enclosure z = zeta2_enclosure(params.zeta_terms);
  BigRational factor = 1;
  for (const std::uint64_t p : k_primes) {
    const BigInt p2 = BigInt(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p);
    factor *= make_rational(p2 - 1, p2);
  }
  return {z.lo * factor, z.hi * factor};
}

Enclosure lambda_constant(const Factored& k, unsigned r, const LambdaParams& params) {
  std::vector<std::uint64_t> primes;
  primes.reserve(k.factors.size());
  for (const auto& [p, e] : k.factors) primes.push_back(p);
  return lambda_constant(primes, r, params);
}

namespace {

constexpr unsigned kProductFixedBits = 256;

BigRational round_fixed(const BigRational& q, bool up) {
  BigInt scaled = q.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kProductFixedBits);
  BigInt quot;
  if (up)
    mpz_cdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  else
    mpz_fdiv_q(quot.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), kProductFixedBits);
  return make_rational(quot, den);
}

}  // namespace

Enclosure lambda_euler_product(std::span<const std::uint64_t> k_primes, unsigned r,
                               const LambdaParams& params) {
  if (r == 0) throw std::invalid_argument("lambda_euler_product: exponent must be >= 1");
  const std::uint64_t Q = params.prime_cutoff;
  const unsigned A = params.exponent_cutoff;
  if (Q < 3 || A < 1) throw std::invalid_argument("lambda_euler_product: cutoffs too small");

  // mean-value bound h(p^alpha) <= r*2^(r-1)/p^alpha  (sigma_{-1}(p^alpha) < 2)
  BigInt mv = r;
  mpz_mul_2exp(mv.get_mpz_t(), mv.get_mpz_t(), r - 1);

  // primes above the cutoff contribute at most 1/(1-T),
  // T = mv * (1/2) * (1/Q + 1/(Q+1)) >= mv * sum_{n>Q} 1/(n^2-1) >= sum_{p>Q} (E_p - 1)
  // via exp(x) <= 1/(1-x); each omitted factor is >= 1, so lo needs nothing.
  const BigRational T = BigRational(mv) * (make_rational(1, BigInt(Q)) + make_rational(1, BigInt(Q) + 1)) / 2;
  if (T >= 1)
    throw ConfigError("lambda_euler_product: prime cutoff too small for this exponent");

  BigRational lo = 1, hi = 1;
  const std::vector<std::uint64_t> primes = primes_up_to(Q);
  for (const std::uint64_t p : primes) {
    if (std::binary_search(k_primes.begin(), k_primes.end(), p)) continue;
    const BigInt bp(static_cast<unsigned long>(p));
    // factor_lo = 1 + sum_{alpha<=A} (g(p^alpha) - g(p^(alpha-1))) / p^alpha
    BigRational factor = 1;
    BigRational s = 1;        // sigma_{-1}(p^alpha)
    BigRational g_prev = 1;   // g(p^(alpha-1))
    BigInt p_alpha = 1;
    for (unsigned alpha = 1; alpha <= A; ++alpha) {
      p_alpha *= bp;
      s += make_rational(1, p_alpha);
      const BigRational g = pow_rational(s, r);
      factor += (g - g_prev) / BigRational(p_alpha);
      g_prev = g;
    }
    // tail over alpha > A: mv * p^(-2(A+1)) / (1 - p^(-2)) = mv / (p^(2A) (p^2-1))
    BigInt p2A;
    mpz_pow_ui(p2A.get_mpz_t(), bp.get_mpz_t(), 2 * A);
    const BigRational tail = make_rational(mv, p2A * (bp * bp - 1));
    lo = round_fixed(lo * factor, /*up=*/false);
    hi = round_fixed(hi * (factor + tail), /*up=*/true);
  }
  hi = round_fixed(hi / (1 - T), /*up=*/true);
  return {lo, hi};
}

PairOutcome pair_saving(const PairContext& ctx, const Factored& a, const Factored& b,
                        const Enclosure& lambda, unsigned r) {
  if (r == 0) throw std::invalid_argument("pair_saving: exponent must be >= 1");
  if (!(lambda.lo > 1))
    throw std::invalid_argument("pair_saving: lambda enclosure must have lo > 1");
  PairOutcome out;
  out.a = a.value;
  out.b = b.value;
  out.ds = pair_density(ctx, a, b);
  if (out.ds == 0) return out;  // degenerate pair: no class, no saving
  const BigRational ga = pow_rational(sigma_minus_one(a), r);
  const BigRational gb = pow_rational(sigma_minus_one(b), r);
  // validity is strict; at a tie the bound saves nothing anyway
  if (gb > lambda.hi * ga) {
    out.valid = true;
    out.saving = out.ds * (gb - lambda.hi * ga) / (gb - ga);
  }
  return out;
}

std::string to_string(AccumMode mode) {
  switch (mode) {
    case AccumMode::kAuto: return "auto";
    case AccumMode::kExact: return "exact";
    case AccumMode::kFast: return "fast";
  }
  return "?";
}

namespace {

constexpr unsigned kLambdaFixedBits = 192;  // sandwich precision for validity tests
constexpr unsigned kSavingGridBits = 96;    // fast-mode accumulation grid

struct ExactAgg {
  std::uint64_t pairs = 0;
  std::uint64_t valid = 0;
  BigRational u = 0;  // sum of ds * g(b) / (g(b) - g(a)) over valid pairs
  BigRational v = 0;  // sum of ds * g(a) / (g(b) - g(a)) over valid pairs
};

struct FastAgg {
  std::uint64_t pairs = 0;
  std::uint64_t valid = 0;
  u128 scaled = 0;  // sum of floor(saving * 2^96), saving taken at lambda_hat
};

// Per-worker reusable GMP temporaries: the hot loop must not allocate.
struct Scratch {
  mpz_class vn, vd, diff, t0, t1, t2, num, den, q;
};

struct EngineShared {
  const PairContext* ctx;
  unsigned r;
  std::uint64_t cap;
  std::vector<std::uint64_t> primes;
  BigRational lambda_hi;   // exact upper endpoint
  mpz_class lambda_floor;  // floor(lambda_hi * 2^K)
  mpz_class cn;            // base_num * mconst
  mpz_class cd;            // base_den << (K - S)
  BigRational ds_const;    // base * mconst (exact-mode dS assembly)
  bool fast = false;
  bool csv = false;
};

// Validity of a pair given VN = (a sigma(b))^r, VD = (b sigma(a))^r:
// condition g(b) > lambda_hi * g(a) <=> VN > lambda_hi * VD.  Cheap
// fixed-point sandwich first, exact comparison only inside the window.
bool pair_is_valid(const EngineShared& sh, Scratch& sc) {
  // t0 = VN << K, t1 = floor(lambda*2^K) * VD
  mpz_mul_2exp(sc.t0.get_mpz_t(), sc.vn.get_mpz_t(), kLambdaFixedBits);
  mpz_mul(sc.t1.get_mpz_t(), sh.lambda_floor.get_mpz_t(), sc.vd.get_mpz_t());
  if (mpz_cmp(sc.t0.get_mpz_t(), sc.t1.get_mpz_t()) <= 0) return false;
  mpz_add(sc.t2.get_mpz_t(), sc.t1.get_mpz_t(), sc.vd.get_mpz_t());
  if (mpz_cmp(sc.t0.get_mpz_t(), sc.t2.get_mpz_t()) > 0) return true;
  // window case: compare VN * den(lambda) with num(lambda) * VD exactly
  mpz_mul(sc.t0.get_mpz_t(), sc.vn.get_mpz_t(), sh.lambda_hi.get_den().get_mpz_t());
  mpz_mul(sc.t1.get_mpz_t(), sh.lambda_hi.get_num().get_mpz_t(), sc.vd.get_mpz_t());
  return mpz_cmp(sc.t0.get_mpz_t(), sc.t1.get_mpz_t()) > 0;
}

}  // namespace

BoundReport density_upper_bound(const BoundConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.workers == 0) throw ConfigError("workers must be >= 1");
  if (config.exponent == 0) throw ConfigError("exponent must be >= 1");
  if (config.zeta_terms == 0) throw ConfigError("zeta terms must be >= 1");
  if (config.collect_pair_csv && config.cap > 1'000'000)
    throw ConfigError("per-pair CSV dump is limited to cap <= 1e6");

  const PairEnumConfig enum_cfg{config.modulus, config.smooth_y, config.cap};
  validate_pair_config(enum_cfg);
  PairContext ctx(config.modulus, config.smooth_y);

  const bool fast = config.mode == AccumMode::kFast ||
                    (config.mode == AccumMode::kAuto && config.cap > 100'000);
  const std::string mode_name = fast ? "fast" : "exact";

  const LambdaParams lambda_params{config.zeta_terms, 10'000, 30};
  const Enclosure lambda = lambda_constant(ctx.primes(), config.exponent, lambda_params);
  if (!(lambda.lo > 1))
    throw ConfigError("lambda enclosure does not certify Lambda > 1; raise --zeta-terms");

  EngineShared sh;
  sh.ctx = &ctx;
  sh.r = config.exponent;
  sh.cap = config.cap;
  sh.primes.assign(ctx.primes().begin(), ctx.primes().end());
  sh.lambda_hi = lambda.hi;
  sh.fast = fast;
  sh.csv = config.collect_pair_csv;
  {
    mpz_class scaled = sh.lambda_hi.get_num();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), kLambdaFixedBits);
    mpz_fdiv_q(sh.lambda_floor.get_mpz_t(), scaled.get_mpz_t(),
               sh.lambda_hi.get_den().get_mpz_t());
  }
  sh.cn = ctx.base().get_num() * static_cast<unsigned long>(ctx.mconst());
  sh.cd = ctx.base().get_den();
  mpz_mul_2exp(sh.cd.get_mpz_t(), sh.cd.get_mpz_t(), kLambdaFixedBits - kSavingGridBits);
  sh.ds_const = ctx.base() * BigRational(static_cast<unsigned long>(ctx.mconst()));

  const std::vector<std::uint64_t> bs = admissible_b_values(enum_cfg);
  const std::size_t b_count = bs.size();

  std::vector<ExactAgg> exact_slots(fast ? 0 : b_count);
  std::vector<FastAgg> fast_slots(fast ? b_count : 0);
  std::vector<std::string> csv_by_b(sh.csv ? b_count : 0);
  std::vector<std::uint8_t> done(b_count, 0);

  // ---- checkpoint plumbing ----------------------------------------------
  CheckpointKey key{kVersion, config.modulus, config.smooth_y, config.cap,
                    config.exponent, config.zeta_terms, mode_name};
  std::ofstream ck_out;
  std::mutex ck_mutex;
  const BigInt grid = BigInt(1) << kSavingGridBits;
  if (!config.checkpoint_path.empty()) {
    const std::filesystem::path path(config.checkpoint_path);
    if (std::filesystem::exists(path)) {
      EnumCheckpoint loaded = load_checkpoint_file(path);
      if (!(loaded.key == key))
        throw CheckpointError("checkpoint: file belongs to a different run configuration");
      std::map<std::uint64_t, const BPartial*> by_b;
      for (const BPartial& line : loaded.completed) by_b.emplace(line.b, &line);
      std::size_t matched = 0;
      for (std::size_t i = 0; i < b_count; ++i) {
        const auto it = by_b.find(bs[i]);
        if (it == by_b.end()) continue;
        const BPartial& line = *it->second;
        if (fast) {
          BigRational scaled = line.u * BigRational(grid);
          scaled.canonicalize();
          if (scaled.get_den() != 1)
            throw CheckpointError("checkpoint: fast aggregate is not on the 2^-96 grid");
          fast_slots[i] = {line.pairs, line.valid, mpz_get_u128(scaled.get_num())};
        } else {
          exact_slots[i] = {line.pairs, line.valid, line.u, line.v};
        }
        done[i] = 1;
        ++matched;
      }
      if (matched != by_b.size())
        throw CheckpointError("checkpoint: contains b values outside this run");
      ck_out.open(path, std::ios::app);
    } else {
      ck_out.open(path, std::ios::trunc);
      ck_out << checkpoint_header_line(key) << '\n' << std::flush;
    }
    if (!ck_out) throw CheckpointError("checkpoint: cannot open '" + config.checkpoint_path + "' for writing");
  }

  // ---- the pair sweep ----------------------------------------------------
  std::atomic<std::uint64_t> newly_done{0};
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> progress_done{
      static_cast<std::uint64_t>(std::count(done.begin(), done.end(), 1))};

  auto process_b = [&](std::size_t slot) {
    if (done[slot] || stop.load(std::memory_order_relaxed)) return;
    const std::uint64_t b = bs[slot];

    thread_local Scratch sc;
    // factor b over the prime table; collect per-b constants
    std::uint64_t pb1 = 1, pb2 = 1, sigma_b = 1;
    std::vector<std::uint64_t> allowed;
    allowed.reserve(sh.primes.size());
    {
      std::uint64_t rest = b;
      for (const std::uint64_t p : sh.primes) {
        if (rest % p != 0) {
          allowed.push_back(p);
          continue;
        }
        std::uint64_t term = 1, pk = 1;
        while (rest % p == 0) {
          rest /= p;
          pk *= p;
          term += pk;
        }
        sigma_b *= term;
        if (ctx.modulus() % p != 0) {
          pb1 *= p - 1;
          pb2 *= p - 2;
        }
      }
    }
    const std::uint64_t a_cap = sh.cap / b;

    // per-b constants
    mpz_class cnb = sh.cn;
    mpz_class cdb = sh.cd;
    BigRational dsb;
    ExactAgg exact{};
    FastAgg agg{};
    std::vector<std::pair<std::uint64_t, std::string>> csv_rows;
    if (fast) {
      cnb *= static_cast<unsigned long>(pb1);
      cdb *= static_cast<unsigned long>(pb2);
      cdb *= static_cast<unsigned long>(b);
    }
    if (!fast || sh.csv) {
      dsb = sh.ds_const * make_rational(BigInt(static_cast<unsigned long>(pb1)),
                                        BigInt(static_cast<unsigned long>(pb2)) *
                                            static_cast<unsigned long>(b));
    }
    mpz_class scaled_sum = 0;

    for_each_smooth(allowed, a_cap, [&](std::uint64_t a, std::span<const PrimePower> afac) {
      ++agg.pairs;
      const std::uint64_t sigma_a = sigma_u64(afac);
      const u128 vnum = static_cast<u128>(a) * sigma_b;
      const u128 vden = static_cast<u128>(b) * sigma_a;
      bool valid = vnum > vden;  // g(b) <= g(a) < lambda * g(a) is hopeless
      if (valid) {
        if (sh.r == 1) {
          mpz_set_u128(sc.vn, vnum);
          mpz_set_u128(sc.vd, vden);
        } else {
          mpz_set_u128(sc.t0, vnum);
          mpz_pow_ui(sc.vn.get_mpz_t(), sc.t0.get_mpz_t(), sh.r);
          mpz_set_u128(sc.t0, vden);
          mpz_pow_ui(sc.vd.get_mpz_t(), sc.t0.get_mpz_t(), sh.r);
        }
        valid = pair_is_valid(sh, sc);
      }
      if (!valid && !sh.csv) return;

      std::uint64_t pa1 = 1, pa2 = 1;
      for (const auto& [p, e] : afac) {
        pa1 *= p - 1;
        pa2 *= p - 2;
      }

      if (valid) {
        ++agg.valid;
        mpz_sub(sc.diff.get_mpz_t(), sc.vn.get_mpz_t(), sc.vd.get_mpz_t());
        if (fast) {
          // floor( cnb*pa1*(VN<<K - (floor+1)*VD) / (cdb*a*pa2*diff) ), clamped at 0
          mpz_mul_2exp(sc.t0.get_mpz_t(), sc.vn.get_mpz_t(), kLambdaFixedBits);
          mpz_mul(sc.t1.get_mpz_t(), sh.lambda_floor.get_mpz_t(), sc.vd.get_mpz_t());
          mpz_sub(sc.t0.get_mpz_t(), sc.t0.get_mpz_t(), sc.t1.get_mpz_t());
          mpz_sub(sc.t0.get_mpz_t(), sc.t0.get_mpz_t(), sc.vd.get_mpz_t());
          if (mpz_sgn(sc.t0.get_mpz_t()) > 0) {
            mpz_mul(sc.num.get_mpz_t(), cnb.get_mpz_t(), sc.t0.get_mpz_t());
            mpz_mul_ui(sc.num.get_mpz_t(), sc.num.get_mpz_t(), static_cast<unsigned long>(pa1));
            mpz_mul_ui(sc.den.get_mpz_t(), cdb.get_mpz_t(), static_cast<unsigned long>(pa2));
            mpz_mul_ui(sc.den.get_mpz_t(), sc.den.get_mpz_t(), static_cast<unsigned long>(a));
            mpz_mul(sc.den.get_mpz_t(), sc.den.get_mpz_t(), sc.diff.get_mpz_t());
            mpz_fdiv_q(sc.q.get_mpz_t(), sc.num.get_mpz_t(), sc.den.get_mpz_t());
            mpz_add(scaled_sum.get_mpz_t(), scaled_sum.get_mpz_t(), sc.q.get_mpz_t());
          }
        }
      }

      if ((!fast && valid) || sh.csv) {
        const BigRational ds =
            dsb * make_rational(BigInt(static_cast<unsigned long>(pa1)),
                                BigInt(static_cast<unsigned long>(pa2)) * static_cast<unsigned long>(a));
        BigRational saving = 0;
        if (valid) {
          const BigRational diff_q{mpz_class(sc.diff)};
          const BigRational u_term = ds * BigRational(mpz_class(sc.vn)) / diff_q;
          const BigRational v_term = ds * BigRational(mpz_class(sc.vd)) / diff_q;
          if (!fast) {
            exact.u += u_term;
            exact.v += v_term;
          }
          if (sh.csv) saving = u_term - sh.lambda_hi * v_term;
        }
        if (sh.csv) {
          std::ostringstream row;
          row << a << ',' << b << ',' << rational_string(ds) << ',' << rational_string(saving);
          csv_rows.emplace_back(a, row.str());
        }
      }
    });
    // invalid pairs with zero saving still count toward the census
    exact.pairs = agg.pairs;
    exact.valid = agg.valid;
    if (fast) agg.scaled = mpz_get_u128(scaled_sum);

    BPartial line;
    line.b = b;
    line.pairs = agg.pairs;
    line.valid = agg.valid;
    if (fast) {
      line.u = make_rational(scaled_sum, grid);
      line.v = 0;
      fast_slots[slot] = agg;
    } else {
      line.u = exact.u;
      line.v = exact.v;
      exact_slots[slot] = std::move(exact);
    }
    if (sh.csv) {
      std::sort(csv_rows.begin(), csv_rows.end());
      std::string block;
      for (auto& [a, row] : csv_rows) {
        block += row;
        block += '\n';
      }
      csv_by_b[slot] = std::move(block);
    }
    done[slot] = 1;

    if (ck_out.is_open()) {
      std::lock_guard<std::mutex> lock(ck_mutex);
      ck_out << checkpoint_data_line(line) << '\n' << std::flush;
    }
    const std::uint64_t total_done = progress_done.fetch_add(1, std::memory_order_relaxed) + 1;
    if (config.progress && (total_done % 4096 == 0 || total_done == b_count))
      config.progress(total_done, b_count);
    if (config.stop_after_b > 0 &&
        newly_done.fetch_add(1, std::memory_order_relaxed) + 1 >= config.stop_after_b)
      stop.store(true, std::memory_order_relaxed);
  };

  parallel_for_dynamic(b_count, config.workers, process_b);

  if (config.stop_after_b > 0 && stop.load()) {
    if (ck_out.is_open()) ck_out.close();
    throw RunInterrupted();
  }

  // ---- deterministic fold, ascending in b --------------------------------
  BoundReport report;
  report.modulus = config.modulus;
  report.smooth_y = config.smooth_y;
  report.cap = config.cap;
  report.exponent = config.exponent;
  report.zeta_terms = config.zeta_terms;
  report.mode = mode_name;
  report.workers = config.workers;
  report.b_count = b_count;
  report.lambda = lambda;

  BigRational u_total = 0, v_total = 0;
  if (fast) {
    mpz_class total = 0, t;
    for (const FastAgg& slot : fast_slots) {
      report.pair_count += slot.pairs;
      report.valid_pair_count += slot.valid;
      mpz_set_u128(t, slot.scaled);
      total += t;
    }
    u_total = make_rational(total, grid);
  } else {
    for (const ExactAgg& slot : exact_slots) {
      report.pair_count += slot.pairs;
      report.valid_pair_count += slot.valid;
      u_total += slot.u;
      v_total += slot.v;
    }
  }
  report.total_saving = fast ? u_total : BigRational(u_total - lambda.hi * v_total);
  report.upper_bound = 1 - report.total_saving;
  report.display = decimal_string(report.upper_bound, 7, Rounding::kUp);
  if (sh.csv) {
    report.pair_csv = "a,b,ds,saving\n";
    for (const std::string& block : csv_by_b) report.pair_csv += block;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace sigmabias
