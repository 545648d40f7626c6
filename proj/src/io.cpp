#include "polymin/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace polymin {

namespace {

using njson = nlohmann::ordered_json;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool is_integer_token(const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
}

} // namespace

Rat parse_rational(const std::string& text, int line) {
    std::string t = trim(text);
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(t)) throw parse_error("expected integer or num/den: " + t, line);
        return Rat(Int(t));
    }
    std::string num = trim(t.substr(0, slash)), den = trim(t.substr(slash + 1));
    if (!is_integer_token(num) || !is_integer_token(den))
        throw parse_error("expected num/den with integer parts: " + t, line);
    Int d(den);
    if (d == 0) throw parse_error("zero denominator: " + t, line);
    return Rat(Int(num), d);
}

IntPolynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                               int line) {
    const std::size_t n = vars.size();
    IntPolynomial acc(n);
    std::size_t i = 0;
    auto skip_ws = [&]() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_uint = [&]() {
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            digits += text[i++];
        if (digits.empty()) throw parse_error("expected digits in polynomial", line);
        return digits;
    };
    auto read_name = [&]() {
        std::string name;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            name += text[i++];
        return name;
    };

    skip_ws();
    if (i == text.size()) throw parse_error("empty polynomial", line);
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw parse_error(std::string("expected '+' or '-' before '") + text[i] + "'",
                              line);
        }
        first = false;
        // term: factors joined by '*'
        Int coeff = sign;
        Monomial mono(n);
        bool any_factor = false;
        while (true) {
            skip_ws();
            if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coeff *= Int(read_uint());
                any_factor = true;
            } else if (i < text.size() &&
                       (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                std::string name = read_name();
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end())
                    throw parse_error("unknown variable '" + name + "'", line);
                unsigned exp = 1;
                skip_ws();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip_ws();
                    exp = static_cast<unsigned>(std::stoul(read_uint()));
                }
                mono.exps[static_cast<std::size_t>(it - vars.begin())] += exp;
                any_factor = true;
            } else {
                throw parse_error("expected coefficient or variable in polynomial", line);
            }
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!any_factor) throw parse_error("empty term in polynomial", line);
        acc.add_term(mono, coeff);
    }
    return acc;
}

InputDocument parse_input(const std::string& text) {
    InputDocument doc;
    doc.systems.emplace_back();
    bool explicit_blocks = false;
    bool saw_content = false;

    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string s = raw;
        auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        auto colon = s.find(':');
        if (colon == std::string::npos)
            throw parse_error("expected 'key: value'", lineno);
        std::string key = trim(s.substr(0, colon));
        std::string value = trim(s.substr(colon + 1));
        SystemBlock* blk = &doc.systems.back();

        if (key == "system") {
            if (!saw_content && doc.systems.size() == 1) {
                explicit_blocks = true;  // first marker names block 1
            } else {
                doc.systems.emplace_back();
            }
            saw_content = true;
            (void)explicit_blocks;
            continue;
        }
        saw_content = true;
        if (key == "vars") {
            blk->variables = split_ws(value);
            if (blk->variables.empty()) throw parse_error("vars: empty list", lineno);
        } else if (key == "eq" || key == "ineq" || key == "obj") {
            if (blk->variables.empty())
                throw parse_error(key + " before vars", lineno);
            IntPolynomial p = parse_polynomial(value, blk->variables, lineno);
            if (key == "eq") blk->equalities.push_back(std::move(p));
            else if (key == "ineq") blk->inequalities.push_back(std::move(p));
            else {
                if (blk->objective) throw parse_error("duplicate obj", lineno);
                blk->objective = std::move(p);
            }
        } else if (key == "d") {
            if (!is_integer_token(value)) throw parse_error("d: expected integer", lineno);
            long v = std::stol(value);
            if (v <= 0) throw parse_error("d must be positive", lineno);
            if (v % 2 != 0) throw parse_error("d must be even", lineno);
            blk->d_override = static_cast<unsigned>(v);
        } else if (key == "seed") {
            std::vector<Rat> coords;
            for (const std::string& tok : split_ws(value))
                coords.push_back(parse_rational(tok, lineno));
            blk->seed = RationalPoint{std::move(coords)};
        } else if (key == "box") {
            std::vector<std::string> toks = split_ws(value);
            if (toks.size() % 2 != 0)
                throw parse_error("box: expected lo hi per axis", lineno);
            Box b;
            for (std::size_t k = 0; k + 1 < toks.size(); k += 2) {
                Rat lo = parse_rational(toks[k], lineno);
                Rat hi = parse_rational(toks[k + 1], lineno);
                if (lo >= hi) throw parse_error("box: lo must be below hi", lineno);
                b.ranges.emplace_back(lo, hi);
            }
            blk->box = std::move(b);
        } else if (key == "resolution") {
            if (!is_integer_token(value))
                throw parse_error("resolution: expected integer", lineno);
            long v = std::stol(value);
            if (v < 2) throw parse_error("resolution must be >= 2", lineno);
            blk->resolution = static_cast<unsigned>(v);
        } else {
            throw parse_error("unknown key '" + key + "'", lineno);
        }
    }

    for (std::size_t k = 0; k < doc.systems.size(); ++k) {
        const SystemBlock& blk = doc.systems[k];
        std::string where = doc.systems.size() > 1
                                ? "system " + std::to_string(k + 1) + ": "
                                : std::string();
        if (blk.variables.empty()) throw parse_error(where + "missing vars", 0);
        if (!blk.objective && doc.systems.size() == 1)
            throw parse_error(where + "missing obj", 0);
        if (blk.seed && blk.seed->dim() != blk.variables.size())
            throw parse_error(where + "seed dimension mismatch", 0);
        if (blk.box && blk.box->dim() != blk.variables.size())
            throw parse_error(where + "box dimension mismatch", 0);
    }
    if (doc.systems.size() > 2) throw parse_error("at most two system blocks", 0);
    return doc;
}

SemialgSystem system_from_block(const SystemBlock& blk) {
    IntPolynomial obj = blk.objective
                            ? *blk.objective
                            : IntPolynomial::variable(blk.variables.size(), 0);
    return SemialgSystem(blk.variables.size(), blk.equalities, blk.inequalities,
                         std::move(obj), blk.d_override);
}

ComponentSpec component_from_block(const SystemBlock& blk) {
    if (!blk.seed || !blk.box)
        throw std::invalid_argument("component designation requires seed and box");
    ComponentSpec c;
    c.seed = *blk.seed;
    c.box = *blk.box;
    c.resolution = blk.resolution.value_or(0);
    return c;
}

std::string serialize_document(const InputDocument& doc) {
    std::ostringstream os;
    for (std::size_t k = 0; k < doc.systems.size(); ++k) {
        const SystemBlock& blk = doc.systems[k];
        if (doc.systems.size() > 1) os << "system: " << (k + 1) << "\n";
        os << "vars:";
        for (const auto& v : blk.variables) os << " " << v;
        os << "\n";
        for (const auto& p : blk.equalities)
            os << "eq: " << p.to_string(blk.variables) << "\n";
        for (const auto& p : blk.inequalities)
            os << "ineq: " << p.to_string(blk.variables) << "\n";
        if (blk.objective) os << "obj: " << blk.objective->to_string(blk.variables) << "\n";
        if (blk.d_override) os << "d: " << *blk.d_override << "\n";
        if (blk.seed) {
            os << "seed:";
            for (const auto& c : blk.seed->coords) os << " " << to_string(c);
            os << "\n";
        }
        if (blk.box) {
            os << "box:";
            for (const auto& r : blk.box->ranges)
                os << " " << to_string(r.first) << " " << to_string(r.second);
            os << "\n";
        }
        if (blk.resolution) os << "resolution: " << *blk.resolution << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// report rendering

namespace {

std::string rat_str(const Rat& v) { return to_string(v); }

njson rat_json(const Rat& v) { return rat_str(v); }

njson enc_json(const Enc& e) {
    return njson{{"lo", rat_str(e.lo)}, {"hi", rat_str(e.hi)},
                 {"marker", "certified-enclosure"}};
}

njson power_json(const PowerExpr& p) {
    njson bases = njson::array(), exps = njson::array();
    for (const auto& [b, e] : p.factors()) {
        bases.push_back(b.str());
        exps.push_back(to_string(e));
    }
    return njson{{"bases", bases}, {"exponents", exps}, {"marker", "exact"}};
}

double enc_float(const Enc& e) { return ((e.lo + e.hi) / 2).convert_to<double>(); }

njson echo_json(const InputDocument& doc) {
    njson arr = njson::array();
    for (const auto& blk : doc.systems) {
        njson b;
        b["vars"] = blk.variables;
        njson eqs = njson::array(), ineqs = njson::array();
        for (const auto& p : blk.equalities) eqs.push_back(p.to_string(blk.variables));
        for (const auto& p : blk.inequalities) ineqs.push_back(p.to_string(blk.variables));
        b["eq"] = eqs;
        b["ineq"] = ineqs;
        if (blk.objective) b["obj"] = blk.objective->to_string(blk.variables);
        if (blk.d_override) b["d"] = *blk.d_override;
        if (blk.seed) {
            njson s = njson::array();
            for (const auto& v : blk.seed->coords) s.push_back(rat_str(v));
            b["seed"] = s;
        }
        if (blk.box) {
            njson s = njson::array();
            for (const auto& r : blk.box->ranges)
                s.push_back(njson{{"lo", rat_str(r.first)}, {"hi", rat_str(r.second)}});
            b["box"] = s;
        }
        if (blk.resolution) b["resolution"] = *blk.resolution;
        arr.push_back(std::move(b));
    }
    return arr;
}

njson witness_json(const Enclosure& enc) {
    njson w = njson::array();
    for (const auto& v : enc.witness.coords) w.push_back(rat_str(v));
    return w;
}

njson bound_report_json(const BoundReport& rep) {
    njson j;
    j["n"] = rep.params.n;
    j["m"] = rep.params.m;
    j["l"] = rep.params.l;
    j["d"] = rep.params.d;
    j["d0"] = rep.params.d0;
    j["H"] = rep.params.H.str();
    j["H0"] = rep.params.H0.str();
    j["H_tilde"] = rep.params.H_tilde().str();
    j["degree_bound"] = rep.deg_bound.str();
    j["magnitude_bound"] = power_json(rep.magnitude);
    j["magnitude_log2"] = enc_json(rep.magnitude_log2);
    j["magnitude_log2_float"] =
        njson{{"value", enc_float(rep.magnitude_log2)}, {"marker", "display-only-float"}};
    njson per_s = njson::array();
    for (const auto& c : rep.per_s) {
        njson e;
        e["s"] = c.s;
        e["M1"] = c.M1.str();
        e["M2"] = c.M2.str();
        e["M3"] = c.M3.str();
        e["N1"] = c.N1.str();
        e["N2"] = c.N2.str();
        e["N3"] = c.N3.str();
        if (c.M_exact) e["M_S_sigma"] = c.M_exact->str();
        e["M_S_sigma_log2"] = enc_json(c.M_log2);
        per_s.push_back(std::move(e));
    }
    j["per_s"] = per_s;
    return j;
}

void render_bound_report(std::ostream& os, const BoundReport& rep) {
    os << "parameters: n=" << rep.params.n << " m=" << rep.params.m << " l=" << rep.params.l
       << " d=" << rep.params.d << " d0=" << rep.params.d0 << " H=" << rep.params.H
       << " H0=" << rep.params.H0 << " H~=" << rep.params.H_tilde() << "\n";
    os << "degree bound (exact): " << rep.deg_bound << "\n";
    os << "magnitude bound (exact): " << rep.magnitude.to_string() << "\n";
    os << "  log2 ~ " << enc_float(rep.magnitude_log2)
       << " (display only; exact enclosure in the machine section)\n";
    for (const auto& c : rep.per_s) {
        os << "  s=" << c.s << ": M1=" << c.M1 << " M2=" << c.M2 << " M3=" << c.M3
           << " N1=" << c.N1 << " N2=" << c.N2 << " N3=" << c.N3;
        if (c.M_exact) os << " M_S_sigma=" << *c.M_exact;
        else os << " M_S_sigma=log2~" << enc_float(c.M_log2);
        os << "\n";
    }
}

njson certificate_json(const CertificatePoly& c) {
    njson j;
    njson S = njson::array(), sigma = njson::array();
    for (std::size_t i = 0; i < c.provenance.S.size(); ++i) {
        S.push_back(c.provenance.S[i]);
        sigma.push_back(c.provenance.sigma[i] > 0 ? "+" : "-");
    }
    j["S"] = S;
    j["sigma"] = sigma;
    njson coeffs = njson::array();
    for (const Int& v : c.q.coeffs()) coeffs.push_back(v.str());
    j["coefficients"] = coeffs;
    j["degree"] = c.q.degree();
    j["height"] = c.q.height().str();
    j["ceilings"] = njson{{"degree", c.ceiling_degree.str()},
                          {"height", c.ceiling_height.str()}};
    return j;
}

struct Verdict {
    std::string name, status, detail;  // status: pass | fail | inapplicable
};

void finish_report(Report& rep, std::ostringstream& human, njson& machine,
                   const std::vector<Verdict>& verdicts) {
    njson vj = njson::array();
    bool any_fail = false;
    for (const auto& v : verdicts) {
        human << "verdict " << v.name << ": " << v.status;
        if (!v.detail.empty()) human << " (" << v.detail << ")";
        human << "\n";
        vj.push_back(njson{{"name", v.name}, {"status", v.status}, {"detail", v.detail}});
        if (v.status == "fail") any_fail = true;
    }
    machine["verdicts"] = vj;
    rep.human = human.str();
    rep.machine_json = machine.dump(2);
    rep.exit_code = any_fail ? 1 : 0;
}

} // namespace

Report cmd_bounds(const InputDocument& doc) {
    Report rep;
    std::ostringstream human;
    njson machine;
    machine["command"] = "bounds";
    machine["input"] = echo_json(doc);

    njson reports = njson::array();
    std::vector<SemialgSystem> systems;
    for (std::size_t k = 0; k < doc.systems.size(); ++k) {
        systems.push_back(system_from_block(doc.systems[k]));
        BoundReport br = make_bound_report(systems.back());
        if (doc.systems.size() > 1) human << "system " << (k + 1) << ":\n";
        render_bound_report(human, br);
        reports.push_back(bound_report_json(br));
    }
    machine["bounds"] = reports;

    if (systems.size() == 2) {
        if (systems[0].n() != systems[1].n())
            throw std::invalid_argument("separate: systems must share the variable count");
        unsigned d = std::max(systems[0].d(), systems[1].d());
        Int H = std::max(systems[0].H(), systems[1].H());
        PowerExpr sep = separation_bound(systems[0].n(), d, H, systems[0].m(),
                                         systems[1].m());
        Enc lg = sep.log2(64);
        human << "separation bound (exact): " << sep.to_string() << "\n";
        human << "  log2 ~ " << enc_float(lg) << " (display only)\n";
        machine["separation_bound"] = power_json(sep);
        machine["separation_bound_log2"] = enc_json(lg);
    }
    finish_report(rep, human, machine, {});
    return rep;
}

Report cmd_qpoly(const InputDocument& doc, const CliOptions& opt) {
    if (doc.systems.size() != 1)
        throw std::invalid_argument("qpoly expects a single system");
    SemialgSystem sys = system_from_block(doc.systems[0]);
    PerturbationMatrix A = build_matrix_A(sys.n(), sys.m());

    Report rep;
    std::ostringstream human;
    njson machine;
    machine["command"] = "qpoly";
    machine["input"] = echo_json(doc);

    std::vector<CertificatePoly> certs;
    if (opt.selector) {
        SubsetSelector sel = *opt.selector;
        sel.validate(sys);
        ResultantSystem rs = build_resultant_system(sys, A, sel);
        ParamResultant pr = multihomog_resultant(rs, opt.budget);
        certs.push_back(q_poly(pr, BoundParams::from_system(sys, sel.size(), false)));
    } else {
        CandidateSet cand = candidate_minima(sys, A, opt.budget);
        certs = std::move(cand.certificates);
    }

    njson carr = njson::array();
    Rat width(1, 1048576);
    for (const auto& c : certs) {
        human << "Q_" << c.provenance.to_string() << " = " << c.q.to_string() << "\n";
        human << "  degree " << c.q.degree() << " <= " << c.ceiling_degree
              << ", height " << c.q.height() << " <= " << c.ceiling_height << "\n";
        njson cj = certificate_json(c);
        njson roots = njson::array();
        if (c.q.degree() >= 1) {
            UPoly sf = squarefree_part(c.q);
            for (const RootInterval& iv : isolate_real_roots(c.q)) {
                RootInterval r = refine_root(sf, iv, width);
                human << "  real root in [" << rat_str(r.lo) << ", " << rat_str(r.hi)
                      << "]\n";
                roots.push_back(njson{{"lo", rat_str(r.lo)}, {"hi", rat_str(r.hi)}});
            }
        }
        cj["real_roots"] = roots;
        carr.push_back(std::move(cj));
    }
    machine["certificates"] = carr;
    finish_report(rep, human, machine, {});
    return rep;
}

Report cmd_certify(const InputDocument& doc, const CliOptions& opt) {
    if (doc.systems.size() != 1)
        throw std::invalid_argument("certify expects a single system");
    SystemBlock blk = doc.systems[0];
    if (opt.resolution) blk.resolution = opt.resolution;
    SemialgSystem sys = system_from_block(blk);
    ComponentSpec comp = component_from_block(blk);
    PerturbationMatrix A = build_matrix_A(sys.n(), sys.m());

    Report rep;
    std::ostringstream human;
    njson machine;
    machine["command"] = "certify";
    machine["input"] = echo_json(doc);

    BoundReport br = make_bound_report(sys);
    render_bound_report(human, br);
    machine["bounds"] = bound_report_json(br);

    OracleBudget ob = opt.oracle_budget;
    Enclosure enc = reference_minimum(sys, comp, opt.target_width, ob);
    human << "oracle minimum in [" << rat_str(enc.lo) << ", " << rat_str(enc.hi) << "]"
          << (enc.witness_certified ? " (witness certified)" : "") << "\n";
    machine["oracle"] = njson{{"lo", rat_str(enc.lo)},
                              {"hi", rat_str(enc.hi)},
                              {"witness", witness_json(enc)},
                              {"witness_certified", enc.witness_certified},
                              {"marker", "certified-enclosure"}};

    CandidateSet cand = candidate_minima(sys, A, opt.budget);
    njson carr = njson::array();
    for (const auto& c : cand.certificates) carr.push_back(certificate_json(c));
    machine["certificates"] = carr;
    human << cand.certificates.size() << " certificate polynomial(s)\n";

    std::vector<Verdict> verdicts;
    Rat refine_width(1, 4194304);  // 2^-22
    auto match = match_enclosure(cand, enc.lo, enc.hi, refine_width);
    if (match) {
        const CertificatePoly& c = cand.certificates[match->cert_index];
        std::string detail = "certificate " + c.provenance.to_string() + " root in [" +
                             rat_str(match->interval.lo) + ", " +
                             rat_str(match->interval.hi) + "]";
        if (match->rational_root) detail += ", root = " + rat_str(*match->rational_root);
        verdicts.push_back({"certificate_root_meets_oracle", "pass", detail});
        bool deg_ok = match->factor_degree <= br.deg_bound;
        verdicts.push_back({"algebraic_degree_within_bound", deg_ok ? "pass" : "fail",
                            "matched-root degree " + match->factor_degree.str() + " vs " +
                                br.deg_bound.str()});
        njson mj;
        mj["certificate_index"] = match->cert_index;
        mj["interval"] = njson{{"lo", rat_str(match->interval.lo)},
                               {"hi", rat_str(match->interval.hi)}};
        if (match->rational_root) mj["rational_root"] = rat_str(*match->rational_root);
        mj["factor_degree"] = match->factor_degree.str();
        machine["match"] = mj;
    } else {
        verdicts.push_back({"certificate_root_meets_oracle", "fail",
                            "no certificate root interval meets the oracle enclosure"});
        verdicts.push_back({"algebraic_degree_within_bound", "fail", "no matched root"});
    }

    if (enc.lo <= 0 && 0 <= enc.hi) {
        verdicts.push_back({"magnitude_bound", "inapplicable",
                            "minimum may be zero; the bound only covers nonzero minima"});
    } else {
        Rat closest = enc.lo > 0 ? enc.lo : enc.hi;  // closest-to-zero endpoint
        int cmp = compare_abs_to_bound(closest, br.magnitude);
        verdicts.push_back({"magnitude_bound", cmp >= 0 ? "pass" : "fail",
                            "|min| >= " + rat_str(abs_rat(closest)) + " vs bound"});
    }
    finish_report(rep, human, machine, verdicts);
    return rep;
}

Report cmd_separate(const InputDocument& doc, const CliOptions& opt) {
    if (doc.systems.size() != 2)
        throw std::invalid_argument("separate expects two system blocks");
    SystemBlock b1 = doc.systems[0], b2 = doc.systems[1];
    if (opt.resolution) {
        b1.resolution = opt.resolution;
        b2.resolution = opt.resolution;
    }
    SemialgSystem s1 = system_from_block(b1), s2 = system_from_block(b2);
    if (s1.n() != s2.n())
        throw std::invalid_argument("separate: systems must share the variable count");
    ComponentSpec c1 = component_from_block(b1), c2 = component_from_block(b2);

    Report rep;
    std::ostringstream human;
    njson machine;
    machine["command"] = "separate";
    machine["input"] = echo_json(doc);

    unsigned d = std::max(s1.d(), s2.d());
    Int H = std::max(s1.H(), s2.H());
    PowerExpr sep = separation_bound(s1.n(), d, H, s1.m(), s2.m());
    Enc lg = sep.log2(64);
    human << "separation bound (exact): " << sep.to_string() << "\n";
    human << "  log2 ~ " << enc_float(lg) << " (display only)\n";
    machine["separation_bound"] = power_json(sep);
    machine["separation_bound_log2"] = enc_json(lg);

    Enclosure enc = separation_oracle(s1, s2, c1, c2, opt.target_width, opt.oracle_budget);
    human << "oracle distance in [" << rat_str(enc.lo) << ", " << rat_str(enc.hi) << "]\n";
    machine["oracle_distance"] = njson{{"lo", rat_str(enc.lo)},
                                       {"hi", rat_str(enc.hi)},
                                       {"witness", witness_json(enc)},
                                       {"marker", "certified-enclosure"}};

    std::vector<Verdict> verdicts;
    if (enc.lo <= 0) {
        verdicts.push_back({"distance_above_bound", "inapplicable",
                            "distance enclosure touches zero; components may intersect"});
    } else {
        int cmp = compare_abs_to_bound(enc.lo, sep);
        verdicts.push_back({"distance_above_bound", cmp >= 0 ? "pass" : "fail",
                            "distance >= " + rat_str(enc.lo) + " vs bound"});
    }
    finish_report(rep, human, machine, verdicts);
    return rep;
}

std::string cmd_example(std::size_t n, unsigned d, const Int& H) {
    ExampleSeparation ex = example_separation(n, d, H);
    InputDocument doc;
    doc.systems.resize(2);
    auto fill = [&](SystemBlock& blk, const SemialgSystem& sys, const ComponentSpec& comp) {
        for (std::size_t i = 1; i <= sys.n(); ++i)
            blk.variables.push_back("x" + std::to_string(i));
        blk.equalities = sys.equalities();
        blk.inequalities = sys.inequalities();
        blk.objective = sys.objective();
        blk.d_override = sys.d();
        blk.seed = comp.seed;
        blk.box = comp.box;
        blk.resolution = comp.resolution;
    };
    fill(doc.systems[0], ex.sys1, ex.comp1);
    fill(doc.systems[1], ex.sys2, ex.comp2);
    std::string out = serialize_document(doc);
    out += "# exact separation: " + ex.distance_expr.to_string() + " = " +
           to_string(ex.distance) + "\n";
    return out;
}

} // namespace polymin
