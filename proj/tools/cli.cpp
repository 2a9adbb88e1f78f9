#include "cli.hpp"

#include <arion/counts.hpp>
#include <arion/error.hpp>
#include <arion/lab.hpp>
#include <arion/params.hpp>
#include <arion/permutation.hpp>
#include <arion/r1cs.hpp>
#include <arion/security.hpp>
#include <arion/sponge.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace arion::cli {

namespace {

using nlohmann::json;

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    f << text;
}

void emit_json(const json& j, std::ostream& out)
{
    out << j.dump(2) << '\n';
}

ArionParameters load_params(const std::string& path)
{
    return parameters_from_json(read_json_file(path));
}

json hex_array(std::span<const FieldElement> v)
{
    auto a = json::array();
    for (const auto& x : v) {
        a.push_back(x.to_hex());
    }
    return a;
}

std::vector<uint8_t> parse_byte_hex(std::string_view hex)
{
    if (hex.starts_with("0x")) {
        hex.remove_prefix(2);
    }
    if (hex.size() % 2 != 0) {
        throw InvalidArgument("byte string needs an even number of hex digits");
    }
    std::vector<uint8_t> out;
    for (size_t i = 0; i < hex.size(); i += 2) {
        out.push_back(static_cast<uint8_t>(parse_hex(hex.substr(i, 2)).get_ui()));
    }
    return out;
}

std::vector<uint64_t> parse_u64_list(const std::string& csv)
{
    std::vector<uint64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error&) {
            throw InvalidArgument("'" + item + "' is not a non-negative integer");
        }
    }
    if (out.empty()) {
        throw InvalidArgument("empty integer list");
    }
    return out;
}

json merkle_path_json(const MerklePath& path, const FieldElement& leaf, const FieldElement& root)
{
    auto levels = json::array();
    for (const auto& s : path.siblings) {
        levels.push_back(hex_array(s));
    }
    return {{"format", "arion-merkle-path-v1"}, {"index", path.index}, {"leaf", leaf.to_hex()}, {"root", root.to_hex()},
            {"siblings", levels}};
}

MerklePath merkle_path_from_json(const json& j, const PrimeField& field)
{
    MerklePath path;
    path.index = j.at("index").get<size_t>();
    for (const auto& level : j.at("siblings")) {
        std::vector<FieldElement> s;
        for (const auto& h : level) {
            s.push_back(field.from_hex(h.get<std::string>()));
        }
        path.siblings.push_back(std::move(s));
    }
    return path;
}

ArionParameters builtin_profile(const std::string& field_name)
{
    ParameterRequest req;
    req.field = PrimeField::from_string(field_name);
    return make_parameters(req);
}

json vector_bundle(const ArionParameters& params)
{
    const auto sponge = make_sponge(params);
    const auto& field = params.field;
    auto hashes = json::array();
    for (size_t len = 0; len < 20; ++len) {
        const auto m = expand_elements(field, "test-vector-message-" + std::to_string(len), params.n, len, "vectors");
        hashes.push_back({{"message", hex_array(m)}, {"digest", arion_hash1(m, params, sponge).to_hex()}});
    }
    auto perms = json::array();
    for (size_t i = 0; i < 5; ++i) {
        const auto x = expand_elements(field, "test-vector-state-" + std::to_string(i), params.n, params.n, "vectors");
        const auto k = i == 0 ? StateVector(params.n, field->zero())
                              : expand_elements(field, "test-vector-key-" + std::to_string(i), params.n, params.n, "vectors");
        perms.push_back({{"state", hex_array(x)}, {"key", hex_array(k)},
                         {"output", hex_array(arion_permute(x, k, params, Direction::forward))}});
    }
    return {{"params_id", params_id(params)},
            {"params", to_json(params)},
            {"sponge", {{"rate", sponge.rate}, {"capacity", sponge.capacity}}},
            {"hash", hashes},
            {"permutation", perms}};
}

void report_error(std::ostream& err, std::string_view kind, std::string_view message)
{
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Arion permutation, ArionHash and their cost estimators", "arion"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    unsigned threads = 1;
    app.add_option("--threads", threads, "Cap on worker threads")->check(CLI::Range(1u, 1024u));

    // gen-params
    auto* gen = app.add_subcommand("gen-params", "Generate and validate a parameter set");
    std::string gen_field = "bn254";
    size_t gen_n = 3;
    std::optional<size_t> gen_rounds;
    std::optional<uint64_t> gen_d1;
    uint64_t gen_d2 = 257;
    std::string gen_mode = "standard";
    std::string gen_seed = "arion";
    bool gen_per_round = false;
    bool gen_lab = false;
    std::string gen_out;
    gen->add_option("--field", gen_field, "bls12, bn254, a decimal prime or 0x hex prime");
    gen->add_option("--n", gen_n, "State size")->check(CLI::Range(2, 64));
    gen->add_option("--rounds", gen_rounds, "Round count (default from the 128-bit table)");
    gen->add_option("--d1", gen_d1, "Low-degree exponent (default: smallest admissible)");
    gen->add_option("--d2", gen_d2, "High-degree exponent");
    gen->add_option("--mode", gen_mode, "standard or aggressive");
    gen->add_option("--seed", gen_seed, "Constant generation seed");
    gen->add_flag("--per-round", gen_per_round, "Fresh GTDS coefficients in every round");
    gen->add_flag("--lab", gen_lab, "Small-prime mode: relaxed d1, any coprime d2, no round floor");
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    // permute
    auto* perm = app.add_subcommand("permute", "Apply the keyed permutation or its inverse");
    std::string perm_params, perm_state, perm_key;
    bool perm_inverse = false, perm_json = false;
    perm->add_option("--params", perm_params, "Parameter file")->required();
    perm->add_option("--state", perm_state, "Comma separated hex elements")->required();
    perm->add_option("--key", perm_key, "Comma separated hex elements (default zero)");
    perm->add_flag("--inverse", perm_inverse, "Run the inverse permutation");
    perm->add_flag("--json", perm_json, "JSON output");

    // hash
    auto* hash = app.add_subcommand("hash", "Hash field elements or bytes");
    std::string hash_params, hash_message, hash_bytes;
    size_t hash_capacity = 1, hash_output = 1;
    bool hash_json = false;
    hash->add_option("--params", hash_params, "Parameter file")->required();
    auto* msg_opt = hash->add_option("--message", hash_message, "Comma separated hex elements");
    auto* bytes_opt = hash->add_option("--bytes", hash_bytes, "Hex byte string, mapped with the bytes-v1 adapter");
    msg_opt->excludes(bytes_opt);
    hash->add_option("--capacity", hash_capacity, "Capacity in elements");
    hash->add_option("--output-len", hash_output, "Digest length in elements");
    hash->add_flag("--json", hash_json, "JSON output");

    // merkle
    auto* merkle = app.add_subcommand("merkle", "Merkle tree over field elements");
    merkle->require_subcommand(1);
    std::string mk_params, mk_leaves, mk_leaf, mk_root, mk_path;
    size_t mk_index = 0, mk_capacity = 1;
    auto* mk_rootcmd = merkle->add_subcommand("root", "Root of a tree");
    auto* mk_prove = merkle->add_subcommand("prove", "Authentication path of one leaf");
    auto* mk_verify = merkle->add_subcommand("verify", "Check an authentication path");
    for (auto* sc : {mk_rootcmd, mk_prove, mk_verify}) {
        sc->add_option("--params", mk_params, "Parameter file")->required();
        sc->add_option("--capacity", mk_capacity, "Capacity in elements");
    }
    for (auto* sc : {mk_rootcmd, mk_prove}) {
        sc->add_option("--leaves", mk_leaves, "Comma separated hex leaves, a power of the rate in number")->required();
    }
    mk_prove->add_option("--index", mk_index, "Leaf index")->required();
    mk_verify->add_option("--path", mk_path, "Path file written by 'merkle prove'")->required();
    mk_verify->add_option("--leaf", mk_leaf, "Leaf (default: the one in the path file)");
    mk_verify->add_option("--root", mk_root, "Root (default: the one in the path file)");

    // count
    auto* cnt = app.add_subcommand("count", "Constraint counts for ArionHash and competitors");
    std::string cnt_scheme = "r1cs", cnt_hash = "arion";
    size_t cnt_n = 3;
    uint64_t cnt_d = 3, cnt_d2 = 257;
    std::optional<size_t> cnt_rounds, cnt_rf, cnt_rp;
    bool cnt_table = false, cnt_json = false;
    cnt->add_option("--scheme", cnt_scheme, "r1cs, plonk2 or plonk3");
    cnt->add_option("--hash", cnt_hash, "arion, aggressive_arion, griffin, anemoi or poseidon");
    cnt->add_option("--n", cnt_n, "State size");
    cnt->add_option("--d", cnt_d, "d1 for ArionHash, S-box degree otherwise");
    cnt->add_option("--d2", cnt_d2, "ArionHash high-degree exponent");
    cnt->add_option("--rounds", cnt_rounds, "Round count override");
    cnt->add_option("--rf", cnt_rf, "Poseidon full rounds");
    cnt->add_option("--rp", cnt_rp, "Poseidon partial rounds");
    cnt->add_flag("--table", cnt_table, "Recompute the whole published comparison for the scheme");
    cnt->add_flag("--json", cnt_json, "JSON output");

    // r1cs-emit
    auto* emit = app.add_subcommand("r1cs-emit", "Emit the ArionHash R1CS and optionally a witness");
    std::string emit_params, emit_out, emit_message, emit_witness;
    std::optional<size_t> emit_len;
    emit->add_option("--params", emit_params, "Parameter file")->required();
    emit->add_option("--message-len", emit_len, "Message length in elements (default: one block)");
    emit->add_option("--out", emit_out, "Constraint system file (default stdout)");
    emit->add_option("--message", emit_message, "Message for the witness, comma separated hex");
    emit->add_option("--witness-out", emit_witness, "Witness file")->needs("--message");

    // r1cs-check
    auto* check = app.add_subcommand("r1cs-check", "Check a witness against a constraint system");
    std::string check_r1cs, check_witness;
    check->add_option("--r1cs", check_r1cs, "Constraint system file")->required();
    check->add_option("--witness", check_witness, "Witness file")->required();

    // estimate
    auto* est = app.add_subcommand("estimate", "Security levels for a parameter set");
    std::string est_params, est_model = "arionhash";
    double est_omega = 2.0;
    bool est_json = false;
    est->add_option("--params", est_params, "Parameter file")->required();
    est->add_option("--omega", est_omega, "Linear algebra exponent")->check(CLI::Range(2.0, 2.3727));
    est->add_option("--model", est_model, "Polynomial model for the solving rows: arion or arionhash");
    est->add_flag("--json", est_json, "JSON output");

    // lab
    auto* lab = app.add_subcommand("lab", "Small-prime experiments");
    lab->require_subcommand(1);
    auto* lab_density = lab->add_subcommand("density", "Monomial density of the round-reduced permutation");
    auto* lab_bij = lab->add_subcommand("bijection", "Exhaustive bijectivity check");
    auto* lab_mds = lab->add_subcommand("mds", "MDS check of circ(1..n)");
    std::string lab_p = "11", lab_ns = "3";
    uint64_t lab_d1 = 3, lab_d2 = 3;
    size_t lab_seeds = 5, lab_rounds = 2, lab_param_rounds = 6;
    std::string lab_seed = "lab";
    bool lab_json = false;
    lab_density->add_option("--p", lab_p, "Comma separated primes");
    lab_density->add_option("--n", lab_ns, "Comma separated state sizes");
    lab_density->add_option("--d1", lab_d1, "Low-degree exponent");
    lab_density->add_option("--d2", lab_d2, "High-degree exponent");
    lab_density->add_option("--seeds", lab_seeds, "Number of constant seeds");
    lab_density->add_option("--rounds", lab_rounds, "Rounds evaluated");
    lab_density->add_option("--param-rounds", lab_param_rounds, "Rounds the parameters are generated for");
    lab_density->add_flag("--json", lab_json, "JSON output");
    lab_bij->add_option("--p", lab_p, "Prime")->required();
    lab_bij->add_option("--n", lab_ns, "State size")->required();
    lab_bij->add_option("--d1", lab_d1, "Low-degree exponent");
    lab_bij->add_option("--d2", lab_d2, "High-degree exponent");
    lab_bij->add_option("--rounds", lab_param_rounds, "Round count");
    lab_bij->add_option("--seed", lab_seed, "Constant seed");
    lab_bij->add_flag("--json", lab_json, "JSON output");
    lab_mds->add_option("--p", lab_p, "Prime: decimal, 0x hex, bls12 or bn254")->required();
    lab_mds->add_option("--n", lab_ns, "State size in {2,3,4}")->required();
    lab_mds->add_flag("--json", lab_json, "JSON output");

    // vectors
    auto* vec = app.add_subcommand("vectors", "Test-vector bundle for the built-in profiles");
    std::string vec_out;
    vec->add_option("--out", vec_out, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return ok;
        }
        report_error(err, "usage", e.what());
        return validation_error;
    }

    try {
        if (gen->parsed()) {
            ParameterRequest req;
            req.field = PrimeField::from_string(gen_field);
            req.n = gen_n;
            req.rounds = gen_rounds;
            req.d1 = gen_d1;
            req.d2 = gen_d2;
            req.mode = parse_mode(gen_mode);
            req.seed = gen_seed;
            req.fresh_coefficients_per_round = gen_per_round;
            if (gen_lab) {
                req.profile_128 = false;
                req.strict_d1 = false;
                req.unsafe_d2 = true;
            }
            write_text(gen_out, to_json(make_parameters(req)).dump(2) + "\n", out);
            return ok;
        }

        if (perm->parsed()) {
            const auto params = load_params(perm_params);
            const auto x = parse_hex_list(*params.field, perm_state);
            auto key = parse_hex_list(*params.field, perm_key);
            if (key.empty()) {
                key.assign(params.n, params.field->zero());
            }
            if (x.size() != params.n || key.size() != params.n) {
                throw InvalidArgument("state and key need exactly n = " + std::to_string(params.n) + " elements");
            }
            const auto y = arion_permute(x, key, params, perm_inverse ? Direction::inverse : Direction::forward);
            if (perm_json) {
                emit_json({{"format", "arion-permute-v1"},
                           {"params_id", params_id(params)},
                           {"direction", perm_inverse ? "inverse" : "forward"},
                           {"input", hex_array(x)},
                           {"key", hex_array(key)},
                           {"output", hex_array(y)}},
                          out);
            } else {
                out << join_hex(y) << '\n';
            }
            return ok;
        }

        if (hash->parsed()) {
            const auto params = load_params(hash_params);
            const auto sponge = make_sponge(params, hash_capacity, hash_output);
            if (const auto problems = validate_sponge(params, sponge); !problems.empty()) {
                std::string msg = "sponge rejected:";
                for (const auto& p : problems) {
                    msg += " " + p + ";";
                }
                throw InvalidArgument(msg);
            }
            const auto m = bytes_opt->count() > 0 ? bytes_to_elements(parse_byte_hex(hash_bytes), *params.field)
                                                  : parse_hex_list(*params.field, hash_message);
            const auto digest = arion_hash(m, params, sponge);
            if (hash_json) {
                emit_json({{"format", "arion-hash-v1"},
                           {"params_id", params_id(params)},
                           {"rate", sponge.rate},
                           {"capacity", sponge.capacity},
                           {"input", bytes_opt->count() > 0 ? "bytes-v1" : "elements"},
                           {"message", hex_array(m)},
                           {"digest", hex_array(digest)}},
                          out);
            } else {
                out << join_hex(digest) << '\n';
            }
            return ok;
        }

        if (merkle->parsed()) {
            const auto params = load_params(mk_params);
            const auto sponge = make_sponge(params, mk_capacity);
            if (mk_verify->parsed()) {
                const auto j = read_json_file(mk_path);
                const auto path = merkle_path_from_json(j, *params.field);
                const auto leaf = params.field->from_hex(mk_leaf.empty() ? j.at("leaf").get<std::string>() : mk_leaf);
                const auto root = params.field->from_hex(mk_root.empty() ? j.at("root").get<std::string>() : mk_root);
                const bool good = merkle_verify(leaf, path, root, params, sponge);
                emit_json({{"format", "arion-merkle-verify-v1"}, {"valid", good}}, out);
                return good ? ok : validation_error;
            }
            MerkleTree tree(parse_hex_list(*params.field, mk_leaves), params, sponge, threads);
            if (mk_prove->parsed()) {
                if (mk_index >= tree.leaves().size()) {
                    throw InvalidArgument("leaf index out of range");
                }
                emit_json(merkle_path_json(tree.prove(mk_index), tree.leaves()[mk_index], tree.root()), out);
            } else {
                emit_json({{"format", "arion-merkle-root-v1"},
                           {"params_id", params_id(params)},
                           {"arity", tree.arity()},
                           {"height", tree.height()},
                           {"leaves", tree.leaves().size()},
                           {"root", tree.root().to_hex()}},
                          out);
            }
            return ok;
        }

        if (cnt->parsed()) {
            const Scheme scheme = parse_scheme(cnt_scheme);
            if (cnt_table) {
                const auto entries = comparison_table(scheme);
                if (cnt_json) {
                    auto rows = json::array();
                    for (const auto& e : entries) {
                        rows.push_back(to_json(e));
                    }
                    emit_json({{"format", "arion-count-table-v1"}, {"scheme", to_string(scheme)}, {"entries", rows},
                               {"deviations", deviation_flags(entries)}},
                              out);
                } else {
                    for (const auto& e : entries) {
                        out << to_string(e.hash) << " n=" << e.n << " d=" << e.d << " r=" << e.rounds.r << ": " << e.value;
                        if (e.published) {
                            out << " (published " << *e.published << (e.deviates() ? ", DEVIATES" : "") << ")";
                        }
                        out << '\n';
                    }
                }
                return ok;
            }
            CountQuery q;
            q.hash = parse_hash_family(cnt_hash);
            q.n = cnt_n;
            q.d = cnt_d;
            q.d2 = cnt_d2;
            if (cnt_rounds || cnt_rf || cnt_rp) {
                RoundSpec rs = default_rounds(q.hash, q.n, q.d == 3 || q.d == 5 ? q.d : 3);
                if (cnt_rounds) {
                    rs.r = *cnt_rounds;
                }
                if (cnt_rf) {
                    rs.rf = *cnt_rf;
                }
                if (cnt_rp) {
                    rs.rp = *cnt_rp;
                }
                if (q.hash == HashFamily::poseidon && (cnt_rf || cnt_rp)) {
                    rs.r = rs.rf + rs.rp;
                }
                q.rounds = rs;
            }
            const uint64_t value = count(q, scheme);
            if (cnt_json) {
                const RoundSpec rs = q.rounds ? *q.rounds : default_rounds(q.hash, q.n, q.d);
                emit_json(to_json(CountEntry{q.hash, scheme, q.n, q.d, rs, value, count_formula(q.hash, scheme), {}, {}}), out);
            } else {
                out << value << '\n';
            }
            return ok;
        }

        if (emit->parsed()) {
            const auto params = load_params(emit_params);
            const auto sponge = make_sponge(params);
            std::optional<std::vector<FieldElement>> message;
            if (!emit_message.empty()) {
                message = parse_hex_list(*params.field, emit_message);
                if (emit_len && *emit_len != message->size()) {
                    throw InvalidArgument("--message-len disagrees with the message");
                }
                emit_len = message->size();
            }
            const auto cs = build_r1cs(params, sponge, emit_len);
            write_text(emit_out, to_json(cs).dump() + "\n", out);
            if (message) {
                const auto w = generate_witness(cs, *message, params);
                write_text(emit_witness, witness_to_json(params.field, w).dump() + "\n", out);
            }
            return ok;
        }

        if (check->parsed()) {
            const auto cs = constraint_system_from_json(read_json_file(check_r1cs));
            const auto w = witness_from_json(read_json_file(check_witness), cs.field());
            const auto bad = cs.violations(w, threads);
            emit_json({{"format", "arion-r1cs-check-v1"},
                       {"satisfied", bad.empty()},
                       {"num_constraints", cs.constraints().size()},
                       {"violations", bad}},
                      out);
            return bad.empty() ? ok : validation_error;
        }

        if (est->parsed()) {
            const auto params = load_params(est_params);
            const auto rep = full_report(params, est_omega, parse_gb_model(est_model));
            if (est_json) {
                emit_json(to_json(rep), out);
            } else {
                for (const auto& e : rep.entries) {
                    out << to_string(e.kind) << ": " << e.kappa_bits << " bits  [" << e.formula_ref << "]";
                    for (const auto& f : e.flags) {
                        out << " " << f;
                    }
                    out << '\n';
                }
            }
            return ok;
        }

        if (lab->parsed()) {
            if (lab_density->parsed()) {
                const auto primes = parse_u64_list(lab_p);
                std::vector<size_t> ns;
                for (uint64_t v : parse_u64_list(lab_ns)) {
                    ns.push_back(static_cast<size_t>(v));
                }
                const auto reports = density_experiment(primes, ns, lab_d1, lab_d2, lab_seeds, lab_rounds, lab_param_rounds, threads);
                if (lab_json) {
                    auto rows = json::array();
                    for (const auto& r : reports) {
                        rows.push_back(to_json(r));
                    }
                    emit_json({{"format", "arion-density-v1"}, {"reports", rows}}, out);
                } else {
                    for (const auto& r : reports) {
                        out << "p=" << r.p << " n=" << r.n << " d1=" << r.d1 << " d2=" << r.d2 << " rounds=" << r.rounds_evaluated
                            << ": min density " << r.min_density << ", total degree " << r.min_total_degree << ".."
                            << r.max_total_degree << ", univariate degree " << r.min_univariate_degree << ".."
                            << r.max_univariate_degree << '\n';
                    }
                }
                return ok;
            }
            if (lab_bij->parsed()) {
                const uint64_t p = parse_u64_list(lab_p).at(0);
                const size_t n = parse_u64_list(lab_ns).at(0);
                const auto params = lab_parameters(p, n, lab_d1, lab_d2, lab_param_rounds, lab_seed);
                const bool bij = exhaustive_bijection_check(params, threads);
                if (lab_json) {
                    emit_json({{"format", "arion-bijection-v1"}, {"p", p}, {"n", n}, {"d1", lab_d1}, {"d2", lab_d2},
                               {"rounds", lab_param_rounds}, {"bijective", bij}},
                              out);
                } else {
                    out << (bij ? "bijective" : "not bijective") << '\n';
                }
                return ok;
            }
            const auto field = PrimeField::from_string(lab_p);
            const size_t n = parse_u64_list(lab_ns).at(0);
            const bool mds = mds_check(n, *field);
            if (lab_json) {
                emit_json({{"format", "arion-mds-v1"}, {"p", to_hex(field->modulus())}, {"n", n}, {"mds", mds}}, out);
            } else {
                out << (mds ? "MDS" : "not MDS") << '\n';
            }
            return ok;
        }

        if (vec->parsed()) {
            auto profiles = json::array();
            for (const char* name : {"bls12", "bn254"}) {
                profiles.push_back(vector_bundle(builtin_profile(name)));
            }
            write_text(vec_out, json{{"format", "arion-vectors-v1"}, {"profiles", profiles}}.dump(2) + "\n", out);
            return ok;
        }
    } catch (const InternalInvariant& e) {
        report_error(err, "internal_invariant", e.what());
        return internal_error;
    } catch (const Error& e) {
        report_error(err, "invalid_argument", e.what());
        return validation_error;
    } catch (const json::exception& e) {
        report_error(err, "invalid_json", e.what());
        return validation_error;
    } catch (const std::exception& e) {
        report_error(err, "internal", e.what());
        return internal_error;
    }
    report_error(err, "usage", "no subcommand");
    return validation_error;
}

} // namespace arion::cli
