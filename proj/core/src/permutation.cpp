#include <arion/permutation.hpp>

#include <arion/chain.hpp>

#include <algorithm>
#include <thread>

namespace arion {

namespace {

void check_state(const StateVector& x, const ArionParameters& params)
{
    if (x.size() != params.n) {
        throw InvalidArgument("state has length " + std::to_string(x.size()) + ", expected n = " + std::to_string(params.n));
    }
}

void check_key(std::span<const FieldElement> key, size_t n)
{
    if (!key.empty() && key.size() != n) {
        throw InvalidArgument("key has length " + std::to_string(key.size()) + ", expected n = " + std::to_string(n));
    }
}

FieldElement eval_g(const GtdsCoefficients& c, const FieldElement& s)
{
    return (s + c.alpha1) * s + c.alpha2;
}

FieldElement eval_h(const GtdsCoefficients& c, const FieldElement& s)
{
    return (s + c.beta) * s;
}

// Shared backward sweep; @p last maps x_n to the last output.
template <typename Last>
StateVector sweep(const StateVector& x, const ArionParameters& params, size_t round, Last&& last)
{
    check_state(x, params);
    const size_t n = params.n;
    StateVector f(n);
    f[n - 1] = last(x[n - 1]);
    FieldElement s = x[n - 1] + f[n - 1];
    for (size_t i = n - 1; i-- > 0;) {
        const auto& c = params.coeff(round, i);
        f[i] = x[i].pow(params.d1) * eval_g(c, s) + eval_h(c, s);
        s += x[i] + f[i];
    }
    return f;
}

} // namespace

StateVector gtds_forward(const StateVector& x, const ArionParameters& params, size_t round)
{
    return sweep(x, params, round, [&](const FieldElement& v) { return v.pow(params.e); });
}

StateVector gtds_ccz(const StateVector& x, const ArionParameters& params, size_t round)
{
    const ExponentChain chain = ExponentChain::best(params.d2);
    return sweep(x, params, round, [&](const FieldElement& v) { return chain_pow(v, chain); });
}

StateVector gtds_inverse(const StateVector& y, const ArionParameters& params, size_t round)
{
    check_state(y, params);
    const size_t n = params.n;
    StateVector x(n);
    x[n - 1] = y[n - 1].pow(params.d2);
    FieldElement s = x[n - 1] + y[n - 1];
    for (size_t i = n - 1; i-- > 0;) {
        const auto& c = params.coeff(round, i);
        const FieldElement g = eval_g(c, s);
        if (g.is_zero()) {
            throw InternalInvariant("g_" + std::to_string(i + 1) + " has a root; the parameter set is corrupted");
        }
        x[i] = ((y[i] - eval_h(c, s)) * g.inverse()).pow(params.d1_inv);
        s += x[i] + y[i];
    }
    return x;
}

StateVector affine_layer(const StateVector& v, std::span<const FieldElement> c)
{
    const size_t n = v.size();
    if (n == 0) {
        return {};
    }
    if (!c.empty() && c.size() != n) {
        throw InvalidArgument("affine constant has the wrong length");
    }
    const auto& field = v[0].field();
    FieldElement sigma = field->zero();
    FieldElement weighted = field->zero();
    for (size_t i = 0; i < n; ++i) {
        sigma += v[i];
        weighted += v[i] * field->element(static_cast<int64_t>(i));
    }
    const FieldElement nn = field->element(static_cast<int64_t>(n));
    StateVector w(n);
    w[0] = sigma + weighted;
    for (size_t i = 1; i < n; ++i) {
        w[i] = w[i - 1] - sigma + nn * v[i - 1];
    }
    if (!c.empty()) {
        for (size_t i = 0; i < n; ++i) {
            w[i] += c[i];
        }
    }
    return w;
}

StateVector affine_layer_inverse(const StateVector& w_in, std::span<const FieldElement> c)
{
    const size_t n = w_in.size();
    if (n == 0) {
        return {};
    }
    StateVector w = c.empty() ? w_in : sub_key(w_in, c);
    const auto& field = w[0].field();
    const FieldElement nn = field->element(static_cast<int64_t>(n));
    const FieldElement total = field->element(static_cast<int64_t>(n * (n + 1) / 2));
    if (nn.is_zero() || total.is_zero()) {
        throw InternalInvariant("circ(1, ..., n) is singular modulo p");
    }
    FieldElement sum = field->zero();
    for (const auto& x : w) {
        sum += x;
    }
    // Every column of circ(1..n) sums to n(n+1)/2.
    const FieldElement sigma = sum * total.inverse();
    const FieldElement n_inv = nn.inverse();
    StateVector v(n);
    for (size_t i = 1; i < n; ++i) {
        v[i - 1] = (w[i] - w[i - 1] + sigma) * n_inv;
    }
    v[n - 1] = (w[0] - w[n - 1] + sigma) * n_inv;
    return v;
}

std::vector<mpz_class> gtds_degrees(size_t n, const mpz_class& d1, const mpz_class& e)
{
    if (n < 1 || d1 < 1 || e < 1) {
        throw InvalidArgument("gtds_degrees needs n, d1, e >= 1");
    }
    std::vector<mpz_class> deg(n);
    for (size_t i = 1; i <= n; ++i) {
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, n - i);
        deg[i - 1] = pow2 * (d1 + e) - d1;
    }
    return deg;
}

StateVector add_key(const StateVector& x, std::span<const FieldElement> key)
{
    check_key(key, x.size());
    StateVector out = x;
    if (!key.empty()) {
        for (size_t i = 0; i < out.size(); ++i) {
            out[i] += key[i];
        }
    }
    return out;
}

StateVector sub_key(const StateVector& x, std::span<const FieldElement> key)
{
    check_key(key, x.size());
    StateVector out = x;
    if (!key.empty()) {
        for (size_t i = 0; i < out.size(); ++i) {
            out[i] -= key[i];
        }
    }
    return out;
}

StateVector initial_layer(const StateVector& x, std::span<const FieldElement> key)
{
    return affine_layer(add_key(x, key));
}

StateVector round_function(const StateVector& x, std::span<const FieldElement> key, const ArionParameters& params, size_t round)
{
    return add_key(affine_layer(gtds_forward(x, params, round), params.round_constants.at(round)), key);
}

StateVector round_function_inverse(const StateVector& y, std::span<const FieldElement> key, const ArionParameters& params, size_t round)
{
    return gtds_inverse(affine_layer_inverse(sub_key(y, key), params.round_constants.at(round)), params, round);
}

StateVector arion_permute(const StateVector& x, std::span<const FieldElement> key, const ArionParameters& params, Direction direction)
{
    check_state(x, params);
    check_key(key, params.n);
    if (direction == Direction::forward) {
        StateVector s = initial_layer(x, key);
        for (size_t i = 0; i < params.rounds; ++i) {
            s = round_function(s, key, params, i);
        }
        return s;
    }
    StateVector s = x;
    for (size_t i = params.rounds; i-- > 0;) {
        s = round_function_inverse(s, key, params, i);
    }
    return sub_key(affine_layer_inverse(s), key);
}

StateVector arion_pi(const StateVector& x, const ArionParameters& params)
{
    return arion_permute(x, {}, params, Direction::forward);
}

std::vector<StateVector> arion_permute_batch(std::span<const StateVector> states, std::span<const FieldElement> key,
                                             const ArionParameters& params, Direction direction, unsigned threads)
{
    std::vector<StateVector> out(states.size());
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, states.size())));
    if (threads <= 1) {
        for (size_t i = 0; i < states.size(); ++i) {
            out[i] = arion_permute(states[i], key, params, direction);
        }
        return out;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    const size_t chunk = (states.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                const size_t lo = t * chunk;
                const size_t hi = std::min(states.size(), lo + chunk);
                for (size_t i = lo; i < hi; ++i) {
                    out[i] = arion_permute(states[i], key, params, direction);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace arion
