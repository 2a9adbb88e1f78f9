#include <arion/lab.hpp>

#include <arion/error.hpp>
#include <arion/permutation.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace arion {

namespace {

uint64_t grid_size(uint64_t p, size_t n)
{
    uint64_t total = 1;
    for (size_t i = 0; i < n; ++i) {
        if (total > lab_state_limit / p) {
            throw InvalidArgument("p^n = " + std::to_string(p) + "^" + std::to_string(n) + " exceeds the lab limit of 10^6 states");
        }
        total *= p;
    }
    return total;
}

uint64_t small_prime(const ArionParameters& params)
{
    const mpz_class& p = params.field->modulus();
    if (!p.fits_ulong_p() || p > lab_state_limit) {
        throw InvalidArgument("lab experiments need a prime below 10^6");
    }
    return p.get_ui();
}

template <typename Fn>
void parallel_ranges(uint64_t total, unsigned threads, Fn fn)
{
    threads = std::max(1u, threads);
    if (threads == 1 || total < 1024) {
        fn(uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    const uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const uint64_t lo = t * chunk;
        const uint64_t hi = std::min(total, lo + chunk);
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                std::lock_guard lock(m);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

size_t PolynomialTable::nonzero() const
{
    return static_cast<size_t>(std::count_if(coeffs.begin(), coeffs.end(), [](uint64_t c) { return c != 0; }));
}

double PolynomialTable::density() const
{
    return coeffs.empty() ? 0.0 : static_cast<double>(nonzero()) / static_cast<double>(coeffs.size());
}

uint64_t PolynomialTable::total_degree() const
{
    uint64_t best = 0;
    for (size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0) {
            continue;
        }
        uint64_t deg = 0;
        for (size_t rest = idx, i = 0; i < n; ++i, rest /= p) {
            deg += rest % p;
        }
        best = std::max(best, deg);
    }
    return best;
}

uint64_t PolynomialTable::univariate_degree() const
{
    uint64_t best = 0;
    for (size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0) {
            continue;
        }
        for (size_t rest = idx, i = 0; i < n; ++i, rest /= p) {
            best = std::max<uint64_t>(best, rest % p);
        }
    }
    return best;
}

uint64_t PolynomialTable::evaluate(std::span<const uint64_t> x) const
{
    if (x.size() != n) {
        throw InvalidArgument("point has the wrong number of coordinates");
    }
    uint64_t acc = 0;
    for (size_t idx = 0; idx < coeffs.size(); ++idx) {
        if (coeffs[idx] == 0) {
            continue;
        }
        uint64_t term = coeffs[idx];
        for (size_t rest = idx, i = 0; i < n; ++i, rest /= p) {
            for (uint64_t k = rest % p; k > 0; --k) {
                term = term * (x[i] % p) % p;
            }
        }
        acc = (acc + term) % p;
    }
    return acc;
}

bool lab_exponents_valid(uint64_t p, uint64_t d1, uint64_t d2)
{
    return std::gcd(d1, p - 1) == 1 && std::gcd(d2, p - 1) == 1 && d1 >= 2 && d2 >= 2;
}

ArionParameters lab_parameters(uint64_t p, size_t n, uint64_t d1, uint64_t d2, size_t rounds, std::string_view seed)
{
    ParameterRequest req;
    req.field = PrimeField::from_u64(p);
    req.n = n;
    req.rounds = rounds;
    req.d1 = d1;
    req.d2 = d2;
    req.seed = std::string(seed);
    req.profile_128 = false;
    req.strict_d1 = false;
    req.unsafe_d2 = true;
    return make_parameters(req);
}

std::vector<std::vector<uint64_t>> evaluate_pi_grid(const ArionParameters& params, size_t rounds, unsigned threads)
{
    const uint64_t p = small_prime(params);
    const size_t n = params.n;
    const uint64_t total = grid_size(p, n);
    if (rounds > params.rounds) {
        throw InvalidArgument("prefix longer than the permutation");
    }
    const StateVector key(n, params.field->zero());
    std::vector<std::vector<uint64_t>> out(n, std::vector<uint64_t>(total));
    parallel_ranges(total, threads, [&](uint64_t lo, uint64_t hi) {
        StateVector x(n, params.field->zero());
        for (uint64_t idx = lo; idx < hi; ++idx) {
            for (uint64_t rest = idx, i = 0; i < n; ++i, rest /= p) {
                x[i] = params.field->element(static_cast<int64_t>(rest % p));
            }
            StateVector y = x;
            if (rounds > 0) {
                y = initial_layer(y, key);
                for (size_t r = 0; r < rounds; ++r) {
                    y = round_function(y, key, params, r);
                }
            }
            for (size_t i = 0; i < n; ++i) {
                out[i][idx] = y[i].value().get_ui();
            }
        }
    });
    return out;
}

std::vector<uint64_t> interpolate_univariate(std::span<const uint64_t> values, uint64_t p)
{
    if (values.size() != p) {
        throw InvalidArgument("univariate interpolation needs exactly p values");
    }
    // f(x) = sum_a v(a) (1 - (x - a)^(p-1)), so c_0 = v(0) and c_k = -sum_a v(a) a^(p-1-k).
    std::vector<uint64_t> c(p, 0);
    c[0] = values[0] % p;
    for (uint64_t a = 0; a < p; ++a) {
        const uint64_t v = values[a] % p;
        if (v == 0) {
            continue;
        }
        uint64_t pw = 1;
        for (uint64_t j = 0; j + 1 < p; ++j) {
            const uint64_t k = p - 1 - j;
            c[k] = (c[k] + p - v * pw % p) % p;
            pw = pw * a % p;
        }
    }
    return c;
}

PolynomialTable interpolate_grid(std::vector<uint64_t> values, uint64_t p, size_t n)
{
    const uint64_t total = grid_size(p, n);
    if (values.size() != total) {
        throw InvalidArgument("grid has the wrong size");
    }
    std::vector<uint64_t> line(p);
    uint64_t stride = 1;
    for (size_t axis = 0; axis < n; ++axis, stride *= p) {
        for (uint64_t base = 0; base < total; ++base) {
            if ((base / stride) % p != 0) {
                continue;
            }
            for (uint64_t a = 0; a < p; ++a) {
                line[a] = values[base + a * stride];
            }
            const auto c = interpolate_univariate(line, p);
            for (uint64_t a = 0; a < p; ++a) {
                values[base + a * stride] = c[a];
            }
        }
    }
    return PolynomialTable{p, n, std::move(values)};
}

std::vector<PolynomialTable> interpolate_pi(const ArionParameters& params, size_t rounds, unsigned threads)
{
    const uint64_t p = small_prime(params);
    auto grid = evaluate_pi_grid(params, rounds, threads);
    std::vector<PolynomialTable> out(params.n);
    parallel_ranges(params.n, std::min<unsigned>(threads, static_cast<unsigned>(params.n)), [&](uint64_t lo, uint64_t hi) {
        for (uint64_t i = lo; i < hi; ++i) {
            out[i] = interpolate_grid(std::move(grid[i]), p, params.n);
        }
    });
    return out;
}

std::vector<std::string> density_seeds(size_t count)
{
    std::vector<std::string> seeds;
    for (size_t i = 0; i < count; ++i) {
        seeds.push_back("density-" + std::to_string(i));
    }
    return seeds;
}

std::vector<DensityReport> density_experiment(std::span<const uint64_t> primes, std::span<const size_t> ns, uint64_t d1,
                                              uint64_t d2, size_t seeds, size_t rounds, size_t param_rounds, unsigned threads)
{
    if (seeds == 0) {
        throw InvalidArgument("density experiment needs at least one seed");
    }
    for (uint64_t p : primes) {
        if (!lab_exponents_valid(p, d1, d2)) {
            throw InvalidArgument("d1 = " + std::to_string(d1) + ", d2 = " + std::to_string(d2) + " are not both invertible mod " +
                                  std::to_string(p) + " - 1");
        }
    }
    std::vector<DensityReport> reports;
    for (uint64_t p : primes) {
        for (size_t n : ns) {
            DensityReport rep{p, n, d1, d2, rounds, param_rounds, {}, 1.0, UINT64_MAX, 0, UINT64_MAX, 0};
            for (const auto& seed : density_seeds(seeds)) {
                const auto params = lab_parameters(p, n, d1, d2, param_rounds, seed);
                DensitySample sample{seed, {}};
                for (const auto& poly : interpolate_pi(params, rounds, threads)) {
                    ComponentStats s{poly.density(), poly.nonzero(), poly.total_degree(), poly.univariate_degree()};
                    rep.min_density = std::min(rep.min_density, s.density);
                    rep.min_total_degree = std::min(rep.min_total_degree, s.total_degree);
                    rep.max_total_degree = std::max(rep.max_total_degree, s.total_degree);
                    rep.min_univariate_degree = std::min(rep.min_univariate_degree, s.univariate_degree);
                    rep.max_univariate_degree = std::max(rep.max_univariate_degree, s.univariate_degree);
                    sample.components.push_back(s);
                }
                rep.samples.push_back(std::move(sample));
            }
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

bool exhaustive_bijection_check(const ArionParameters& params, unsigned threads)
{
    const uint64_t p = small_prime(params);
    const auto grid = evaluate_pi_grid(params, params.rounds, threads);
    std::vector<bool> seen(grid.front().size(), false);
    for (size_t idx = 0; idx < seen.size(); ++idx) {
        uint64_t image = 0;
        for (size_t i = params.n; i-- > 0;) {
            image = image * p + grid[i][idx];
        }
        if (seen[image]) {
            return false;
        }
        seen[image] = true;
    }
    return true;
}

std::vector<std::vector<int64_t>> circulant_matrix(size_t n)
{
    std::vector<std::vector<int64_t>> m(n, std::vector<int64_t>(n));
    for (size_t row = 0; row < n; ++row) {
        for (size_t col = 0; col < n; ++col) {
            m[row][col] = static_cast<int64_t>((col + n - row) % n) + 1;
        }
    }
    return m;
}

namespace {

int64_t det(const std::vector<std::vector<int64_t>>& a)
{
    const size_t k = a.size();
    if (k == 1) {
        return a[0][0];
    }
    int64_t acc = 0;
    for (size_t col = 0; col < k; ++col) {
        std::vector<std::vector<int64_t>> minor;
        for (size_t row = 1; row < k; ++row) {
            std::vector<int64_t> r;
            for (size_t c = 0; c < k; ++c) {
                if (c != col) {
                    r.push_back(a[row][c]);
                }
            }
            minor.push_back(std::move(r));
        }
        const int64_t term = a[0][col] * det(minor);
        acc += col % 2 == 0 ? term : -term;
    }
    return acc;
}

} // namespace

bool mds_check(size_t n, const PrimeField& field)
{
    if (n < 2 || n > 4) {
        throw InvalidArgument("MDS check supports n in {2, 3, 4}");
    }
    if (field.modulus() <= 130) {
        throw InvalidArgument("MDS check needs p > 130");
    }
    const auto m = circulant_matrix(n);
    const uint32_t full = (1u << n) - 1;
    for (uint32_t rows = 1; rows <= full; ++rows) {
        for (uint32_t cols = 1; cols <= full; ++cols) {
            if (std::popcount(rows) != std::popcount(cols)) {
                continue;
            }
            std::vector<std::vector<int64_t>> sub;
            for (size_t r = 0; r < n; ++r) {
                if (!(rows >> r & 1u)) {
                    continue;
                }
                std::vector<int64_t> line;
                for (size_t c = 0; c < n; ++c) {
                    if (cols >> c & 1u) {
                        line.push_back(m[r][c]);
                    }
                }
                sub.push_back(std::move(line));
            }
            mpz_class d = det(sub);
            d %= field.modulus();
            if (d == 0) {
                return false;
            }
        }
    }
    return true;
}

nlohmann::json to_json(const DensityReport& r)
{
    nlohmann::json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["d1"] = r.d1;
    j["d2"] = r.d2;
    j["rounds_evaluated"] = r.rounds_evaluated;
    j["param_rounds"] = r.param_rounds;
    j["min_density"] = r.min_density;
    j["min_total_degree"] = r.min_total_degree;
    j["max_total_degree"] = r.max_total_degree;
    j["min_univariate_degree"] = r.min_univariate_degree;
    j["max_univariate_degree"] = r.max_univariate_degree;
    auto samples = nlohmann::json::array();
    for (const auto& s : r.samples) {
        auto comps = nlohmann::json::array();
        for (const auto& c : s.components) {
            comps.push_back({{"density", c.density},
                             {"nonzero", c.nonzero},
                             {"total_degree", c.total_degree},
                             {"univariate_degree", c.univariate_degree}});
        }
        samples.push_back({{"seed", s.seed}, {"components", std::move(comps)}});
    }
    j["samples"] = std::move(samples);
    return j;
}

} // namespace arion
