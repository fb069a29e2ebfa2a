#include "dpcount/arith.hpp"

#include <algorithm>
#include <mutex>

namespace dpc::arith {

namespace {

std::uint64_t g_sieve_bound = 1'000'000;
std::vector<std::uint32_t> g_primes;
std::mutex g_sieve_mutex;

void rebuild_sieve() {
    std::vector<bool> comp(g_sieve_bound + 1, false);
    g_primes.clear();
    for (std::uint64_t i = 2; i <= g_sieve_bound; ++i) {
        if (comp[i]) continue;
        g_primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= g_sieve_bound; j += i) comp[j] = true;
    }
}

void ensure_sieve() {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    if (g_primes.empty()) rebuild_sieve();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool miller_rabin(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

void set_sieve_bound(std::uint64_t bound) {
    std::lock_guard<std::mutex> lock(g_sieve_mutex);
    g_sieve_bound = std::max<std::uint64_t>(bound, 100);
    rebuild_sieve();
}

const std::vector<std::uint32_t>& primes() {
    ensure_sieve();
    return g_primes;
}

bool is_prime(std::uint64_t n) {
    ensure_sieve();
    if (n <= g_sieve_bound) {
        return std::binary_search(g_primes.begin(), g_primes.end(), static_cast<std::uint32_t>(n));
    }
    return miller_rabin(n);
}

std::uint64_t Factorization::value() const {
    std::uint64_t v = 1;
    for (auto [p, e] : factors)
        for (int i = 0; i < e; ++i) v *= p;
    return v;
}

std::uint64_t Factorization::tau() const {
    std::uint64_t t = 1;
    for (auto [p, e] : factors) t *= static_cast<std::uint64_t>(e + 1);
    return t;
}

bool Factorization::squarefree() const {
    for (auto [p, e] : factors)
        if (e > 1) return false;
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    ensure_sieve();
    Factorization f;
    std::uint64_t m = n;
    for (std::uint32_t p : g_primes) {
        if (static_cast<std::uint64_t>(p) * p > m) break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) {
        // Unfactored part: either prime, or a product of primes beyond the
        // sieve.  Only prime remainders are supported; larger inputs are out
        // of scope for this kernel.
        if (m <= g_sieve_bound * g_sieve_bound || miller_rabin(m)) {
            if (!miller_rabin(m)) throw std::invalid_argument("factorize: composite beyond sieve range");
            f.factors.emplace_back(m, 1);
        } else {
            throw std::invalid_argument("factorize: input beyond supported range");
        }
    }
    return f;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    Factorization f = factorize(n);
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : f.factors) {
        std::size_t sz = ds.size();
        std::uint64_t pe = 1;
        for (int i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be >= 1");
    if (n == 1) return 1;
    Factorization f = factorize(n);
    if (!f.squarefree()) return 0;
    return (f.omega() % 2 == 0) ? 1 : -1;
}

int omega(std::uint64_t n) { return factorize(n).omega(); }

std::uint64_t tau(std::uint64_t n) { return factorize(n).tau(); }

std::pair<std::uint64_t, std::uint64_t> squarefree_decompose(std::uint64_t n) {
    Factorization f = factorize(n);
    std::uint64_t u = 1, v = 1;
    for (auto [p, e] : f.factors) {
        if (e & 1) u *= p;
        for (int i = 0; i < e / 2; ++i) v *= p;
    }
    return {u, v};
}

Rat phi_star(const Factorization& f) {
    Rat r = 1;
    for (auto [p, e] : f.factors) {
        (void)e;
        r *= Rat(Int(p) - 1, Int(p));
    }
    return r;
}

Rat phi_star(std::uint64_t n) { return phi_star(factorize(n)); }

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::int64_t gcd_vec(std::span<const std::int64_t> v) {
    std::int64_t g = 0;
    for (std::int64_t x : v) g = std::gcd(g, x < 0 ? -x : x);
    return g;
}

std::uint64_t primitive_count(const std::vector<std::vector<std::int64_t>>& S) {
    // Direct gcd filter.
    std::uint64_t direct = 0;
    std::int64_t maxabs = 0;
    for (const auto& x : S) {
        std::int64_t g = gcd_vec(x);
        if (g == 0) throw std::invalid_argument("primitive_count: zero vector in S");
        if (g == 1) ++direct;
        for (std::int64_t c : x) maxabs = std::max(maxabs, c < 0 ? -c : c);
    }
    // Mobius sum: sum_k mu(k) #{x in S : k | x}.  Terms vanish for
    // k > max |component|.
    std::int64_t msum = 0;
    for (std::int64_t k = 1; k <= std::max<std::int64_t>(maxabs, 1); ++k) {
        int mu = mobius(static_cast<std::uint64_t>(k));
        if (mu == 0) continue;
        std::int64_t cnt = 0;
        for (const auto& x : S) {
            bool all = true;
            for (std::int64_t c : x)
                if (c % k != 0) { all = false; break; }
            if (all) ++cnt;
        }
        msum += mu * cnt;
    }
    if (msum < 0 || static_cast<std::uint64_t>(msum) != direct)
        throw std::logic_error("primitive_count: Mobius sum disagrees with direct filter");
    return direct;
}

std::int64_t coprime_count_interval(std::int64_t a, std::int64_t b, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("coprime_count_interval: m >= 1 required");
    std::int64_t total = 0;
    for (std::uint64_t d : divisors(m)) {
        int mu = mobius(d);
        if (mu == 0) continue;
        std::int64_t dd = static_cast<std::int64_t>(d);
        // #{n in (a,b] : d | n} = floor(b/d) - floor(a/d)
        auto fdiv = [](std::int64_t x, std::int64_t q) {
            std::int64_t r = x / q;
            if (x % q != 0 && x < 0) --r;
            return r;
        };
        total += mu * (fdiv(b, dd) - fdiv(a, dd));
    }
    return total;
}

}  // namespace dpc::arith
