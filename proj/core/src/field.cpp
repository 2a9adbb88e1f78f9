#include <arion/field.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace arion {

namespace {

// 64 Miller-Rabin rounds: error probability at most 4^-64 = 2^-128.
constexpr int kPrimalityReps = 64;

const char* const kBls12Hex = "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
const char* const kBn254Hex = "30644e72e131a029b85045b68181585d2833e84879b9709143e1f593f0000001";

std::string_view strip_prefix(std::string_view hex)
{
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) {
        hex.remove_prefix(2);
    }
    return hex;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

PrimeField::PrimeField(Private, mpz_class p, std::string name)
    : p_(std::move(p)), name_(std::move(name)), bits_(mpz_sizeinbase(p_.get_mpz_t(), 2))
{}

std::shared_ptr<const PrimeField> PrimeField::make(mpz_class p, std::string name, bool trusted)
{
    if (p <= 4) {
        throw InvalidArgument("modulus must be a prime > 4");
    }
    if (!trusted && mpz_probab_prime_p(p.get_mpz_t(), kPrimalityReps) == 0) {
        throw InvalidArgument("modulus is not prime: " + p.get_str());
    }
    if (name.empty()) {
        name = "p" + p.get_str();
    }
    return std::make_shared<const PrimeField>(Private{}, std::move(p), std::move(name));
}

std::shared_ptr<const PrimeField> PrimeField::create(const mpz_class& p)
{
    if (p == bls12()->modulus()) {
        return bls12();
    }
    if (p == bn254()->modulus()) {
        return bn254();
    }
    return make(p, "", false);
}

std::shared_ptr<const PrimeField> PrimeField::from_u64(uint64_t p)
{
    mpz_class v;
    mpz_import(v.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    return create(v);
}

std::shared_ptr<const PrimeField> PrimeField::from_string(std::string_view spec)
{
    spec = trim(spec);
    if (spec == "bls12" || spec == "BLS12") {
        return bls12();
    }
    if (spec == "bn254" || spec == "BN254") {
        return bn254();
    }
    if (spec.empty()) {
        throw InvalidArgument("empty prime specification");
    }
    if (spec.size() > 2 && spec[0] == '0' && (spec[1] == 'x' || spec[1] == 'X')) {
        return create(parse_hex(spec));
    }
    if (!std::all_of(spec.begin(), spec.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw InvalidArgument("cannot parse prime '" + std::string(spec) + "'");
    }
    return create(mpz_class(std::string(spec), 10));
}

std::shared_ptr<const PrimeField> PrimeField::bls12()
{
    static const auto field = make(mpz_class(kBls12Hex, 16), "bls12", true);
    return field;
}

std::shared_ptr<const PrimeField> PrimeField::bn254()
{
    static const auto field = make(mpz_class(kBn254Hex, 16), "bn254", true);
    return field;
}

long double PrimeField::log2_modulus() const
{
    return log2_big(p_);
}

FieldElement PrimeField::zero() const
{
    return FieldElement(shared_from_this(), mpz_class(0));
}

FieldElement PrimeField::one() const
{
    return FieldElement(shared_from_this(), mpz_class(1));
}

FieldElement PrimeField::element(const mpz_class& v) const
{
    mpz_class r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p_.get_mpz_t());
    return FieldElement(shared_from_this(), std::move(r));
}

FieldElement PrimeField::element(int64_t v) const
{
    return element(mpz_class(static_cast<long>(v)));
}

FieldElement PrimeField::from_hex(std::string_view hex) const
{
    mpz_class v = parse_hex(hex);
    if (v >= p_) {
        throw InvalidArgument("hex value is not below the modulus: " + std::string(hex));
    }
    return FieldElement(shared_from_this(), std::move(v));
}

FieldElement PrimeField::from_bytes(std::span<const uint8_t> bytes) const
{
    mpz_class v;
    if (!bytes.empty()) {
        mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 0, 0, bytes.data());
    }
    if (v >= p_) {
        throw InvalidArgument("byte string is not below the modulus");
    }
    return FieldElement(shared_from_this(), std::move(v));
}

void FieldElement::check_same(const FieldElement& b) const
{
    if (field_ != b.field_ && (!field_ || !b.field_ || !(*field_ == *b.field_))) {
        throw ModulusMismatch();
    }
}

FieldElement FieldElement::operator+(const FieldElement& b) const
{
    FieldElement r(*this);
    r += b;
    return r;
}

FieldElement FieldElement::operator-(const FieldElement& b) const
{
    FieldElement r(*this);
    r -= b;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& b) const
{
    FieldElement r(*this);
    r *= b;
    return r;
}

FieldElement FieldElement::operator-() const
{
    if (v_ == 0) {
        return *this;
    }
    return FieldElement(field_, field_->modulus() - v_);
}

FieldElement& FieldElement::operator+=(const FieldElement& b)
{
    check_same(b);
    v_ += b.v_;
    if (v_ >= field_->modulus()) {
        v_ -= field_->modulus();
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& b)
{
    check_same(b);
    v_ -= b.v_;
    if (v_ < 0) {
        v_ += field_->modulus();
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& b)
{
    check_same(b);
    mpz_mul(v_.get_mpz_t(), v_.get_mpz_t(), b.v_.get_mpz_t());
    mpz_tdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), field_->modulus().get_mpz_t());
    return *this;
}

FieldElement FieldElement::pow(const mpz_class& k) const
{
    if (k < 0) {
        throw InvalidArgument("negative exponent");
    }
    mpz_class r;
    mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), k.get_mpz_t(), field_->modulus().get_mpz_t());
    return FieldElement(field_, std::move(r));
}

FieldElement FieldElement::pow(uint64_t k) const
{
    mpz_class e;
    mpz_import(e.get_mpz_t(), 1, 1, sizeof(k), 0, 0, &k);
    return pow(e);
}

FieldElement FieldElement::inverse() const
{
    if (v_ == 0) {
        throw NotInvertible("zero has no multiplicative inverse");
    }
    mpz_class r;
    mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), field_->modulus().get_mpz_t());
    return FieldElement(field_, std::move(r));
}

bool FieldElement::is_qnr() const
{
    return legendre_is_qnr(*this);
}

std::string FieldElement::to_hex() const
{
    std::string digits = v_.get_str(16);
    const size_t width = 2 * field_->byte_width();
    if (digits.size() < width) {
        digits.insert(0, width - digits.size(), '0');
    }
    return digits;
}

std::vector<uint8_t> FieldElement::to_bytes() const
{
    std::vector<uint8_t> out(field_->byte_width(), 0);
    size_t count = 0;
    std::vector<uint8_t> raw((mpz_sizeinbase(v_.get_mpz_t(), 2) + 7) / 8 + 1);
    mpz_export(raw.data(), &count, 1, 1, 0, 0, v_.get_mpz_t());
    std::copy(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(count), out.end() - static_cast<std::ptrdiff_t>(count));
    return out;
}

bool FieldElement::operator==(const FieldElement& b) const
{
    check_same(b);
    return v_ == b.v_;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m)
{
    if (m <= 0) {
        throw InvalidArgument("modulus of inv_mod must be positive");
    }
    mpz_class r;
    if (m == 1 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw NotInvertible(a.get_str() + " is not invertible modulo " + m.get_str());
    }
    return r;
}

bool legendre_is_qnr(const FieldElement& a)
{
    if (a.is_zero()) {
        throw InvalidArgument("quadratic residuosity of zero is undefined");
    }
    const mpz_class& p = a.field()->modulus();
    mpz_class half = (p - 1) / 2;
    return a.pow(half).value() == p - 1;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b)
{
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

long double log2_big(const mpz_class& v)
{
    if (v <= 0) {
        throw InvalidArgument("log2 of a non-positive integer");
    }
    const size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    const size_t shift = bits > 64 ? bits - 64 : 0;
    mpz_class top;
    mpz_tdiv_q_2exp(top.get_mpz_t(), v.get_mpz_t(), shift);
    uint64_t word = 0;
    mpz_export(&word, nullptr, -1, sizeof(word), 0, 0, top.get_mpz_t());
    return std::log2(static_cast<long double>(word)) + static_cast<long double>(shift);
}

std::string to_hex(const mpz_class& v)
{
    return v.get_str(16);
}

mpz_class parse_hex(std::string_view hex)
{
    hex = strip_prefix(trim(hex));
    if (hex.empty() || !std::all_of(hex.begin(), hex.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); })) {
        throw InvalidArgument("malformed hex value '" + std::string(hex) + "'");
    }
    return mpz_class(std::string(hex), 16);
}

std::vector<FieldElement> parse_hex_list(const PrimeField& field, std::string_view csv)
{
    std::vector<FieldElement> out;
    if (trim(csv).empty()) {
        return out;
    }
    size_t start = 0;
    while (true) {
        size_t comma = csv.find(',', start);
        out.push_back(field.from_hex(csv.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string join_hex(std::span<const FieldElement> elems, std::string_view sep)
{
    std::string out;
    for (size_t i = 0; i < elems.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += elems[i].to_hex();
    }
    return out;
}

} // namespace arion
