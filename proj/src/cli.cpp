#include "paramaudit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "paramaudit/criteria.hpp"
#include "paramaudit/descriptor.hpp"
#include "paramaudit/error.hpp"
#include "paramaudit/families.hpp"
#include "paramaudit/field.hpp"
#include "paramaudit/genus.hpp"
#include "paramaudit/hyperelliptic.hpp"
#include "paramaudit/numtheory.hpp"

namespace paramaudit::cli {

using nlohmann::json;

namespace {

struct Config {
    GroupLimits limits;
    std::uint64_t height = 500;
    std::map<std::string, std::string> echo;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "config key '" + key + "' expects an unsigned integer, got '" + v + "'");
    }
}

// key=value lines; '#' starts a comment.
Config load_config(const std::string& path) {
    Config c;
    if (path.empty()) return c;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "enumeration") c.limits.enumeration = to_u64(key, value);
        else if (key == "brute_force") c.limits.brute_force = to_u64(key, value);
        else if (key == "height") c.height = to_u64(key, value);
        else fail(ErrorCode::ParseError, path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        c.echo[key] = value;
    }
    return c;
}

json config_json(const Config& c) {
    return {{"enumeration", c.limits.enumeration}, {"brute_force", c.limits.brute_force}, {"height", c.height}};
}

std::vector<std::uint64_t> u64_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" []"));
        item.erase(item.find_last_not_of(" []") + 1);
        if (item.empty()) continue;
        out.push_back(to_u64("list", item));
    }
    return out;
}

std::pair<std::uint64_t, std::uint64_t> range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        auto v = to_u64("range", text);
        return {v, v};
    }
    auto a = to_u64("range", text.substr(0, dots)), b = to_u64("range", text.substr(dots + 2));
    if (a > b) fail(ErrorCode::InvalidArgument, "empty range " + text);
    return {a, b};
}

json jint(nt::i128 v) {
    if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
    return nt::to_string(v);
}

bool is_refusal(ErrorCode c) {
    switch (c) {
        case ErrorCode::GenusNotCertified:
        case ErrorCode::EmbeddingNotCertified:
        case ErrorCode::MissingLocalEvidence:
        case ErrorCode::ClassSearchFailed:
        case ErrorCode::OracleGap:
        case ErrorCode::NonUniqueIndexTwo:
        case ErrorCode::NoEvidence:
        case ErrorCode::NotEnoughClasses:
        case ErrorCode::DegreeTooHigh:
            return true;
        default:
            return false;
    }
}

struct Emitter {
    std::ostream& out;
    std::string path;
    void operator()(const json& j) const {
        std::string text = j.dump(2) + "\n";
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(path);
        if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path);
        f << text;
    }
};

Subset kernel_from_arg(const PermGroup& G, const std::string& spec) {
    if (spec == "center") return center(G);
    if (spec == "derived") return derived_subgroup(G);
    json j;
    try {
        j = json::parse(spec);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("--kernel expects center, derived or a JSON list of cycles: ") + e.what());
    }
    if (j.is_array()) j = json{{"generators", j}};
    return subgroup_from_witness(G, j);
}

json checked(const CheckResult& r, int& code) {
    if (r.ok()) {
        code = kOk;
        return to_json(*r.certificate);
    }
    code = kRefusal;
    return json{{"refusal", to_json(*r.refusal)}};
}

std::vector<CycleType> parse_types(const std::vector<std::string>& hint) {
    std::vector<CycleType> out;
    for (auto& h : hint) out.push_back(parse_cycle_type(h));
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audits finite Galois groups against non-parametricity criteria", "paramaudit"};
    app.set_version_flag("--version", PARAMAUDIT_VERSION);
    app.require_subcommand(1);
    std::string config_path, out_path;
    app.add_option("--config", config_path, "key=value file: enumeration, brute_force, height");

    std::string group, field = "Q", assert_path, theorem = "auto", kernel, verify_path;
    std::vector<std::string> hint;
    auto add_group = [&](CLI::App* s, bool required = true) {
        auto o = s->add_option("--group", group, "group descriptor as JSON, e.g. {\"dihedral\":15}");
        if (required) o->required();
        s->add_option("--field", field, "Q or a JSON field description");
    };

    auto* audit = app.add_subcommand("audit", "check one criterion (or classify) and emit a certificate");
    add_group(audit, false);
    audit->add_option("--theorem", theorem, "auto, T3.2, T3.4, T3.6, T3.7 or T3.8");
    audit->add_option("--kernel", kernel, "center, derived or a JSON list of cycle strings");
    audit->add_option("--hint", hint, "class labels to try first");
    audit->add_option("--assert", assert_path, "JSON file of evidence assertions");
    audit->add_option("--verify", verify_path, "re-validate a certificate file instead");
    audit->add_option("--out", out_path, "output file");

    bool all_conditions = false;
    auto* classify_cmd = app.add_subcommand("classify", "route a group to the matching family condition");
    add_group(classify_cmd);
    classify_cmd->add_flag("--all-conditions", all_conditions, "test every condition, not just the first");
    classify_cmd->add_option("--out", out_path, "output file");

    std::string orders = "1..64";
    bool abelian_only = false;
    auto* classify_all = app.add_subcommand("classify-all", "batch classification over a range of orders");
    classify_all->add_option("--orders", orders, "a..b");
    classify_all->add_option("--field", field, "Q or a JSON field description");
    classify_all->add_flag("--abelian-only", abelian_only, "abelian groups only (otherwise dihedral groups too)");
    classify_all->add_option("--out", out_path, "output file");

    std::uint64_t order = 0;
    std::string ram;
    auto* genus = app.add_subcommand("genus", "Riemann-Hurwitz genus of a ramification type");
    genus->add_option("--order", order, "group order")->required();
    genus->add_option("--ram", ram, "ramification indices, comma separated")->required();

    int cap = 1;
    auto* genus_table = app.add_subcommand("genus-table", "low-genus ramification types and the genus verdict");
    add_group(genus_table);
    genus_table->add_option("--cap", cap, "largest genus listed (0 or 1)");

    auto* prime_set = app.add_subcommand("prime-set", "primes p with [k(zeta_p):k] <= 2");
    prime_set->add_option("--field", field, "Q or a JSON field description");

    std::uint64_t n = 0;
    std::size_t count = 5;
    auto* sn = app.add_subcommand("sn-classes", "class lists used for S_n");
    sn->add_option("--n", n, "degree")->required();
    sn->add_option("--count", count, "3 or 5");

    std::string invariants;
    auto* aq = app.add_subcommand("abelian-quotient", "suitable quotient of an abelian group");
    aq->add_option("--invariants", invariants, "divisibility chain, e.g. 4,8")->required();
    aq->add_option("--field", field, "Q or a JSON field description");

    std::size_t exponent = 2;
    auto* fp = app.add_subcommand("fiber-power", "fiber power G^n_H with its invariants");
    add_group(fp);
    fp->add_option("--kernel", kernel, "center, derived or a JSON list of cycle strings")->required();
    fp->add_option("--n", exponent, "exponent");

    std::string poly;
    std::int64_t dmax = 20;
    std::uint64_t bound = 0;
    auto* twist = app.add_subcommand("twist-scan", "specialization sweep against twisted point search");
    twist->add_option("--poly", poly, "separable polynomial, e.g. \"T^3 - T\"")->required();
    twist->add_option("--dmax", dmax, "largest |d|");
    twist->add_option("--bound", bound, "height bound (default from config)");

    std::string t0;
    auto* spec = app.add_subcommand("specialize", "squarefree part of P(t0), or all realized d up to a height");
    spec->add_option("--poly", poly, "separable polynomial")->required();
    spec->add_option("--t", t0, "a/b or inf");
    spec->add_option("--bound", bound, "height bound for the sweep");

    auto* p81 = app.add_subcommand("prop81", "parametricity of T^2 - P(T) for deg P <= 4");
    p81->add_option("--poly", poly, "separable polynomial")->required();

    std::vector<std::string> argv_store{"paramaudit"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        if (code == 0) return kOk;
        err << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
        return kError;
    }

    try {
        Config cfg = load_config(config_path);
        Emitter emit{out, out_path};
        if (bound == 0) bound = cfg.height;

        if (*audit) {
            if (!verify_path.empty()) {
                Certificate c = certificate_from_json(json::parse(read_file(verify_path)));
                auto problems = verify_certificate(c, cfg.limits);
                emit({{"valid", problems.empty()}, {"problems", problems}});
                return problems.empty() ? kOk : kRefusal;
            }
            if (group.empty()) fail(ErrorCode::InvalidArgument, "audit needs --group or --verify");
            GroupDescriptor d = parse_descriptor(group);
            FieldContext fc = parse_field(field);
            Assertions as;
            if (!assert_path.empty()) as = assertions_from_json(json::parse(read_file(assert_path)));
            int code = kOk;
            if (theorem == "auto") {
                FamilyVerdict v = classify(d, fc, {cfg.limits, true});
                emit(to_json(v));
                return v.covered ? kOk : kRefusal;
            }
            auto s = d.as<SymmetricDesc>();
            bool symmetric_default = s && kernel.empty() && (theorem == "T3.6" || theorem == "T3.8") &&
                                     !(declared_order(d) && *declared_order(d) <= cfg.limits.enumeration);
            if (symmetric_default) {
                auto r = theorem == "T3.6" ? check_T36_symmetric(s->n, fc, parse_types(hint))
                                           : check_T38_symmetric(s->n, fc, parse_types(hint));
                emit(checked(r, code));
                return code;
            }
            Audited A = Audited::make(d, cfg.limits);
            if (theorem == "T3.8") {
                emit(checked(check_T38(A, fc, as, hint), code));
                return code;
            }
            if (kernel.empty()) fail(ErrorCode::InvalidArgument, theorem + " needs --kernel");
            Subset H = kernel_from_arg(A.G, kernel);
            CheckResult r;
            if (theorem == "T3.2") r = check_T32(A, H, fc, as);
            else if (theorem == "T3.4") r = check_T34(A, H, fc, as);
            else if (theorem == "T3.6") r = check_T36(A, H, fc, as, hint);
            else if (theorem == "T3.7") r = check_T37(A, H, fc, as);
            else fail(ErrorCode::InvalidArgument, "unknown theorem " + theorem);
            emit(checked(r, code));
            return code;
        }
        if (*classify_cmd) {
            FamilyVerdict v = classify(parse_descriptor(group), parse_field(field), {cfg.limits, !all_conditions});
            emit(to_json(v));
            return v.covered ? kOk : kRefusal;
        }
        if (*classify_all) {
            FieldContext fc = parse_field(field);
            auto [lo, hi] = range(orders);
            std::vector<GroupDescriptor> groups;
            for (std::uint64_t o = std::max<std::uint64_t>(lo, 1); o <= hi; ++o) {
                for (auto& c : abelian_groups_of_order(o)) groups.push_back(GroupDescriptor::abelian(c));
                if (!abelian_only && o % 2 == 0 && o >= 6) groups.push_back(GroupDescriptor::dihedral(o / 2));
            }
            json records = json::array();
            std::size_t covered = 0, excepted = 0, uncovered = 0, errors = 0;
            for (auto& d : groups) {
                json rec{{"group", to_json(d)}, {"label", label(d)}};
                try {
                    FamilyVerdict v = classify(d, fc, {cfg.limits, true});
                    rec["covered"] = v.covered;
                    rec["condition"] = v.covered ? json(v.condition) : json(nullptr);
                    rec["conclusion"] = v.certificate ? json(to_string(v.certificate->conclusion)) : json(nullptr);
                    rec["exception"] = v.exception ? *v.exception : json(nullptr);
                    if (v.covered) ++covered;
                    else if (v.exception) ++excepted;
                    else ++uncovered;
                } catch (const Error& e) {
                    rec["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
                    ++errors;
                }
                records.push_back(rec);
            }
            emit({{"tool", "paramaudit"},
                  {"version", PARAMAUDIT_VERSION},
                  {"configuration", {{"orders", orders}, {"abelian_only", abelian_only}, {"field", to_json(fc)},
                                     {"bounds", config_json(cfg)}}},
                  {"summary", {{"groups", groups.size()}, {"covered", covered}, {"exception", excepted},
                               {"not_covered", uncovered}, {"errors", errors}}},
                  {"records", records}});
            return kOk;
        }
        if (*genus) {
            out << rh_genus(RamificationType(order, u64_list(ram))) << "\n";
            return kOk;
        }
        if (*genus_table) {
            GroupDescriptor d = parse_descriptor(group);
            FieldContext fc = parse_field(field);
            PermGroup G = materialize(d, cfg.limits);
            json types = json::array();
            for (auto& t : realizable_low_genus_types(G, cap))
                types.push_back({{"indices", t.indices}, {"genus", rh_genus(t)}});
            emit({{"group", to_json(d)},
                  {"label", label(d)},
                  {"order", G.order()},
                  {"element_orders", element_order_set(G)},
                  {"realizable_types", types},
                  {"verdict", to_json(minimal_genus_lower_bound(G, fc))}});
            return kOk;
        }
        if (*prime_set) {
            emit(to_json(prime_set_S(parse_field(field))));
            return kOk;
        }
        if (*sn) {
            json classes = json::array();
            for (auto& t : sn_select_classes(n, count))
                classes.push_back({{"type", type_label(t)}, {"order", type_order(t)}, {"odd", type_sign(t) < 0}});
            emit({{"n", n}, {"count", count}, {"classes", classes}});
            return kOk;
        }
        if (*aq) {
            AbelianQuotient q = abelian_suitable_quotient(u64_list(invariants), parse_field(field));
            emit(to_json(q));
            return q.quotient ? kOk : kRefusal;
        }
        if (*fp) {
            GroupDescriptor d = parse_descriptor(group);
            PermGroup G = materialize(d, cfg.limits);
            Subset H = kernel_from_arg(G, kernel);
            FiberPower f = fiber_power(G, H, exponent);
            json ni = json::array();
            for (auto& s : f.N_i) ni.push_back(s.size());
            emit({{"group", to_json(d)},
                  {"kernel_order", H.size()},
                  {"n", exponent},
                  {"order", f.product.order()},
                  {"N_order", f.N.size()},
                  {"N_i_orders", ni},
                  {"quotients_by_N_i_isomorphic_to_G", f.quotients_by_N_i_isomorphic_to_base},
                  {"quotient_by_N_isomorphic_to_G_mod_H", f.quotient_by_N_isomorphic_to_base_quotient}});
            return kOk;
        }
        if (*twist) {
            SeparablePoly p = parse_separable(poly);
            json reports = json::array();
            bool all_agree = true;
            std::vector<std::int64_t> spec_side, point_side;
            for (std::int64_t d = -dmax; d <= dmax; ++d) {
                if (d == 0 || d == 1 || squarefree_part(d) != d) continue;
                TwistReport r = twist_correspondence_check(p, d, bound);
                all_agree = all_agree && r.agree;
                if (r.witness_t) spec_side.push_back(d);
                if (r.witness_point) point_side.push_back(d);
                reports.push_back(to_json(r));
            }
            emit({{"poly", p.poly().to_string()},
                  {"bound", bound},
                  {"dmax", dmax},
                  {"realized_by_specialization", spec_side},
                  {"realized_by_points", point_side},
                  {"agree", all_agree && spec_side == point_side},
                  {"reports", reports}});
            return kOk;
        }
        if (*spec) {
            SeparablePoly p = parse_separable(poly);
            if (!t0.empty()) {
                Rat t = parse_rat(t0);
                emit({{"poly", p.poly().to_string()}, {"t0", to_string(t)}, {"d", jint(specialize(p, t))}});
                return kOk;
            }
            json list = json::array();
            for (auto& r : realized_discriminants(p, bound))
                list.push_back({{"d", jint(r.d)}, {"witness", to_string(r.witness)}, {"degenerate", r.degenerate()}});
            emit({{"poly", p.poly().to_string()}, {"bound", bound}, {"realized", list}});
            return kOk;
        }
        if (*p81) {
            emit(to_json(prop81_classify(parse_separable(poly))));
            return kOk;
        }
    } catch (const Error& e) {
        json j{{"error", error_code_name(e.code())}, {"message", e.what()}};
        if (is_refusal(e.code())) {
            out << json{{"refusal", j}}.dump(2) << "\n";
            return kRefusal;
        }
        err << j.dump() << "\n";
        return kError;
    } catch (const json::exception& e) {
        err << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
        return kError;
    } catch (const std::exception& e) {
        err << json{{"error", "RuntimeError"}, {"message", e.what()}}.dump() << "\n";
        return kError;
    }
    return kError;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace paramaudit::cli
