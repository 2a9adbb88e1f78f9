#include <arion/r1cs.hpp>

#include <arion/chain.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <thread>

namespace arion {

using LC = LinearCombination;

LC LC::variable(size_t var, const FieldElement& coeff)
{
    LC lc;
    if (!coeff.is_zero()) {
        lc.terms_.push_back({var, coeff});
    }
    return lc;
}

LC LC::constant(const FieldElement& value)
{
    return variable(ConstraintSystem::one_var, value);
}

std::optional<FieldElement> LC::coefficient(size_t var) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), var, [](const Term& t, size_t v) { return t.var < v; });
    if (it == terms_.end() || it->var != var) {
        return std::nullopt;
    }
    return it->coeff;
}

LC LC::operator+(const LC& b) const
{
    LC out;
    out.terms_.reserve(terms_.size() + b.terms_.size());
    size_t i = 0;
    size_t j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() || (i < terms_.size() && terms_[i].var < b.terms_[j].var)) {
            out.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || b.terms_[j].var < terms_[i].var) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            FieldElement sum = terms_[i].coeff + b.terms_[j].coeff;
            if (!sum.is_zero()) {
                out.terms_.push_back({terms_[i].var, std::move(sum)});
            }
            ++i;
            ++j;
        }
    }
    return out;
}

LC LC::operator-(const LC& b) const
{
    if (b.terms_.empty()) {
        return *this;
    }
    return *this + b * (-b.terms_.front().coeff.field()->one());
}

LC LC::operator*(const FieldElement& k) const
{
    LC out;
    if (k.is_zero()) {
        return out;
    }
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        out.terms_.push_back({t.var, t.coeff * k});
    }
    return out;
}

LC& LC::operator+=(const LC& b)
{
    *this = *this + b;
    return *this;
}

FieldElement LC::evaluate(const std::vector<FieldElement>& w, const FieldPtr& field) const
{
    FieldElement acc = field->zero();
    for (const auto& t : terms_) {
        acc += t.coeff * w.at(t.var);
    }
    return acc;
}

ConstraintSystem::ConstraintSystem(FieldPtr field) : field_(std::move(field)) {}

size_t ConstraintSystem::new_var()
{
    return num_vars_++;
}

size_t ConstraintSystem::add(Constraint c)
{
    constraints_.push_back(std::move(c));
    return constraints_.size() - 1;
}

std::vector<size_t> ConstraintSystem::violations(const std::vector<FieldElement>& w, unsigned threads) const
{
    if (w.size() != num_vars_) {
        throw InvalidArgument("witness has " + std::to_string(w.size()) + " values, the system has " + std::to_string(num_vars_)
                              + " variables");
    }
    auto check = [&](size_t k) {
        const auto& c = constraints_[k];
        return c.a.evaluate(w, field_) * c.b.evaluate(w, field_) == c.c.evaluate(w, field_);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(1, constraints_.size()))));
    std::vector<char> ok(constraints_.size(), 1);
    if (threads == 1) {
        for (size_t k = 0; k < constraints_.size(); ++k) {
            ok[k] = check(k);
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (size_t k = t; k < constraints_.size(); k += threads) {
                    ok[k] = check(k);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    std::vector<size_t> bad;
    for (size_t k = 0; k < ok.size(); ++k) {
        if (!ok[k]) {
            bad.push_back(k);
        }
    }
    return bad;
}

bool ConstraintSystem::is_satisfied(const std::vector<FieldElement>& w, unsigned threads) const
{
    if (w.size() != num_vars_ || !w[one_var].is_one()) {
        return false;
    }
    return violations(w, threads).empty();
}

namespace {

class CircuitBuilder {
  public:
    CircuitBuilder(ConstraintSystem& cs, const ArionParameters& p)
        : cs_(cs), p_(p), f_(p.field), d1_chain_(ExponentChain::best(p.d1)), d2_chain_(ExponentChain::best(p.d2))
    {}

    LC var(size_t v) const { return LC::variable(v, f_->one()); }
    LC constant(const FieldElement& x) const { return LC::constant(x); }
    LC scalar(int64_t k) const { return LC::constant(f_->element(k)); }

    LC mul(const LC& a, const LC& b)
    {
        const size_t v = cs_.new_var();
        const size_t k = cs_.add({a, b, var(v)});
        cs_.hint({WitnessHint::Kind::Solve, v, k, {}});
        return var(v);
    }

    // x^d along @p chain; with @p target the last product is constrained to equal it.
    LC power(const LC& x, const ExponentChain& chain, const LC* target)
    {
        const auto steps = chain.steps();
        std::vector<LC> regs{x};
        for (size_t k = 0; k < steps.size(); ++k) {
            const LC& a = regs[steps[k].lhs];
            const LC& b = regs[steps[k].rhs];
            if (target && k + 1 == steps.size()) {
                cs_.add({a, b, *target});
                regs.push_back(*target);
            } else {
                regs.push_back(mul(a, b));
            }
        }
        return regs.back();
    }

    std::vector<LC> affine(const std::vector<LC>& v, std::span<const FieldElement> c) const
    {
        const size_t n = v.size();
        std::vector<LC> w(n);
        for (size_t j = 0; j < n; ++j) {
            for (size_t k = 0; k < n; ++k) {
                w[j] += v[k] * f_->element(static_cast<int64_t>((k + n - j) % n + 1));
            }
            if (!c.empty()) {
                w[j] += constant(c[j]);
            }
        }
        return w;
    }

    // One round; when @p digest is set the first branch's product is tied to it.
    std::vector<LC> round(const std::vector<LC>& x, size_t r, std::optional<size_t> digest)
    {
        const size_t n = p_.n;
        std::vector<LC> f(n);
        const size_t y = cs_.new_var();
        cs_.hint({WitnessHint::Kind::PowE, y, 0, x[n - 1]});
        power(var(y), d2_chain_, &x[n - 1]);
        f[n - 1] = var(y);
        LC sigma = x[n - 1] + f[n - 1];
        const auto& rc = p_.round_constants.at(r);
        for (size_t i = n - 1; i-- > 0;) {
            const auto& co = p_.coeff(r, i);
            const LC pw = power(x[i], d1_chain_, nullptr);
            const LC s = mul(sigma, sigma);
            const LC g = s + sigma * co.alpha1 + constant(co.alpha2);
            const LC h = s + sigma * co.beta;
            if (digest && i == 0) {
                // out_1 = f_1 + sum_{j>=2} j f_j + c_1, so t_1 = D - R is implied.
                LC rest = h + constant(rc[0]);
                for (size_t j = 1; j < n; ++j) {
                    rest += f[j] * f_->element(static_cast<int64_t>(j + 1));
                }
                const LC t = var(*digest) - rest;
                const size_t k = cs_.add({pw, g, t});
                cs_.hint({WitnessHint::Kind::Solve, *digest, k, {}});
                f[i] = t + h;
            } else {
                f[i] = mul(pw, g) + h;
            }
            sigma += x[i] + f[i];
        }
        return affine(f, rc);
    }

    std::vector<LC> permutation(std::vector<LC> state, std::optional<size_t> digest)
    {
        state = affine(state, {});
        for (size_t r = 0; r < p_.rounds; ++r) {
            state = round(state, r, r + 1 == p_.rounds ? digest : std::nullopt);
        }
        return state;
    }

  private:
    ConstraintSystem& cs_;
    const ArionParameters& p_;
    FieldPtr f_;
    ExponentChain d1_chain_;
    ExponentChain d2_chain_;
};

} // namespace

ConstraintSystem build_r1cs(const ArionParameters& params, const SpongeParameters& sponge, std::optional<size_t> message_len)
{
    if (sponge.output_len != 1) {
        throw InvalidArgument("the circuit supports single-element digests only");
    }
    if (sponge.rate + sponge.capacity != params.n || sponge.rate < 1 || sponge.capacity < 1) {
        throw InvalidArgument("sponge does not match the parameter set");
    }
    ConstraintSystem cs(params.field);
    CircuitBuilder b(cs, params);
    const size_t len = message_len.value_or(sponge.rate);
    cs.set_message_len(len);

    const size_t digest = cs.new_var();
    cs.mark_public(digest);
    cs.set_digest_var(digest);

    std::vector<size_t> msg;
    for (size_t k = 0; k < len; ++k) {
        msg.push_back(cs.new_var());
        cs.hint({WitnessHint::Kind::Input, msg.back(), k, {}});
    }

    const auto& field = params.field;
    const size_t rem = len % sponge.rate;
    const bool padded = len == 0 || rem != 0;
    const size_t total = len + (padded ? sponge.rate - rem : 0);

    std::vector<LC> state(params.n);
    if (padded) {
        state[sponge.rate] = LC::constant(field->element(mpz_class(static_cast<unsigned long>(len))));
        for (size_t i = 1; i < sponge.capacity; ++i) {
            state[sponge.rate + i] = LC::constant(sponge.iv_prime.at(i - 1));
        }
    } else {
        for (size_t i = 0; i < sponge.capacity; ++i) {
            state[sponge.rate + i] = LC::constant(sponge.iv.at(i));
        }
    }
    for (size_t off = 0; off < total; off += sponge.rate) {
        for (size_t i = 0; i < sponge.rate; ++i) {
            if (off + i < len) {
                state[i] += b.var(msg[off + i]);
            }
        }
        const bool last = off + sponge.rate >= total;
        state = b.permutation(std::move(state), last ? std::optional<size_t>(digest) : std::nullopt);
    }
    return cs;
}

std::vector<FieldElement> generate_witness(const ConstraintSystem& cs, std::span<const FieldElement> message, const ArionParameters& params)
{
    if (message.size() != cs.message_len()) {
        throw InvalidArgument("circuit hashes " + std::to_string(cs.message_len()) + " elements, message has "
                              + std::to_string(message.size()));
    }
    const auto& field = cs.field();
    std::vector<FieldElement> w(cs.num_vars(), field->zero());
    w[ConstraintSystem::one_var] = field->one();
    for (const auto& h : cs.schedule()) {
        switch (h.kind) {
        case WitnessHint::Kind::Input:
            w[h.var] = message[h.index];
            break;
        case WitnessHint::Kind::PowE:
            w[h.var] = h.lc.evaluate(w, field).pow(params.e);
            break;
        case WitnessHint::Kind::Solve: {
            const auto& c = cs.constraints().at(h.index);
            const auto coeff = c.c.coefficient(h.var);
            if (!coeff) {
                throw InternalInvariant("witness hint refers to a constraint without its variable");
            }
            w[h.var] = field->zero();
            const FieldElement rest = c.c.evaluate(w, field);
            w[h.var] = (c.a.evaluate(w, field) * c.b.evaluate(w, field) - rest) * coeff->inverse();
            break;
        }
        }
    }
    return w;
}

namespace {

nlohmann::json lc_json(const LC& lc)
{
    auto j = nlohmann::json::array();
    for (const auto& t : lc.terms()) {
        j.push_back({t.var, t.coeff.to_hex()});
    }
    return j;
}

LC lc_from_json(const nlohmann::json& j, const PrimeField& f, size_t num_vars)
{
    LC lc;
    for (const auto& t : j) {
        const size_t v = t.at(0).get<size_t>();
        if (v >= num_vars) {
            throw InvalidArgument("constraint refers to variable " + std::to_string(v) + " beyond num_vars");
        }
        lc += LC::variable(v, f.from_hex(t.at(1).get<std::string>()));
    }
    return lc;
}

} // namespace

nlohmann::json to_json(const ConstraintSystem& cs)
{
    nlohmann::json j;
    j["format"] = "arion-r1cs-v1";
    j["prime"] = "0x" + to_hex(cs.field()->modulus());
    j["num_vars"] = cs.num_vars();
    j["num_constraints"] = cs.constraints().size();
    j["public"] = cs.public_inputs();
    j["digest_var"] = cs.digest_var();
    j["message_len"] = cs.message_len();
    auto arr = nlohmann::json::array();
    for (const auto& c : cs.constraints()) {
        arr.push_back({{"a", lc_json(c.a)}, {"b", lc_json(c.b)}, {"c", lc_json(c.c)}});
    }
    j["constraints"] = std::move(arr);
    return j;
}

ConstraintSystem constraint_system_from_json(const nlohmann::json& j)
{
    try {
        ConstraintSystem cs(PrimeField::from_string(j.at("prime").get<std::string>()));
        const size_t num_vars = j.at("num_vars").get<size_t>();
        if (num_vars < 1) {
            throw InvalidArgument("num_vars must be at least 1");
        }
        while (cs.num_vars() < num_vars) {
            cs.new_var();
        }
        for (size_t v : j.at("public")) {
            cs.mark_public(v);
        }
        cs.set_digest_var(j.value("digest_var", size_t{0}));
        cs.set_message_len(j.value("message_len", size_t{0}));
        for (const auto& c : j.at("constraints")) {
            cs.add({lc_from_json(c.at("a"), *cs.field(), num_vars), lc_from_json(c.at("b"), *cs.field(), num_vars),
                    lc_from_json(c.at("c"), *cs.field(), num_vars)});
        }
        return cs;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed constraint system: ") + ex.what());
    }
}

nlohmann::json witness_to_json(const FieldPtr& field, const std::vector<FieldElement>& w)
{
    nlohmann::json j;
    j["format"] = "arion-witness-v1";
    j["prime"] = "0x" + to_hex(field->modulus());
    auto values = nlohmann::json::array();
    for (const auto& x : w) {
        values.push_back(x.to_hex());
    }
    j["values"] = std::move(values);
    return j;
}

std::vector<FieldElement> witness_from_json(const nlohmann::json& j, const FieldPtr& field)
{
    try {
        if (parse_hex(j.at("prime").get<std::string>()) != field->modulus()) {
            throw InvalidArgument("witness and constraint system use different primes");
        }
        std::vector<FieldElement> w;
        for (const auto& v : j.at("values")) {
            w.push_back(field->from_hex(v.get<std::string>()));
        }
        return w;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed witness: ") + ex.what());
    }
}

} // namespace arion
