#include "logfirm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "logfirm/svg.hpp"

namespace logfirm {

namespace {

// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
Json load(const std::string& arg) {
    auto first = arg.find_first_not_of(" \t\n");
    try {
        if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return Json::parse(arg);
        std::ifstream in(arg);
        if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + arg);
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidInput, "malformed JSON in " + arg + ": " + e.what());
    }
}

// "[a,b]" or "[a,b]@i".
std::pair<IntVector, std::optional<std::size_t>> parse_point(const std::string& s) {
    auto at = s.find('@');
    auto coords = vector_from_json(load(s.substr(0, at)));
    if (at == std::string::npos) return {coords, std::nullopt};
    try {
        return {coords, std::stoul(s.substr(at + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "bad cone index in " + s);
    }
}

IntegralPoint locate(const ConeComplex& c, const IntVector& coords, std::optional<std::size_t> cone) {
    if (cone) {
        if (*cone >= c.cones.size()) throw Error(ErrorCode::InvalidInput, "cone index out of range");
        return canonicalize_point(c, {*cone, coords});
    }
    for (std::size_t i = 0; i < c.cones.size(); ++i)
        if (c.cones[i].lattice_rank == coords.size() && c.cones[i].dd.contains(coords)) return canonicalize_point(c, {i, coords});
    throw Error(ErrorCode::OutsideSupport, "point lies in no cone of the target");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

CommandResult answer(Json payload, bool yes) {
    CommandResult r;
    r.payload = std::move(payload);
    r.status = yes ? CommandStatus::Ok : CommandStatus::Infeasible;
    r.exit_code = yes ? 0 : 1;
    return r;
}

CommandResult ok(Json payload) { return answer(std::move(payload), true); }

struct Options {
    std::string monoid, f, g, problem, query, method = "factorization";
    std::string map, point, vals, fan, other, ray, chart, matrix, ideal, out;
    long bound = -1, box = 4, rank = 2, n = 1, m = 1, residue_char = -1;
    bool compact = false, variants = false, in_z = false;
};

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Firmness, firmaments and Campana multiplicities for log schemes", "logfirm"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.add_option("--bound", o.bound, "Node budget for integer searches");
    app.add_flag("--json", o.compact, "Compact machine output");

    auto* monoid = app.add_subcommand("monoid", "Affine monoids")->require_subcommand(1);
    auto* m_sat = monoid->add_subcommand("saturate", "Saturated monoid and Hilbert basis");
    auto* m_dual = monoid->add_subcommand("dual", "Hom(M, N)");
    auto* m_faces = monoid->add_subcommand("faces", "Face lattice");
    for (auto* s : {m_sat, m_dual, m_faces}) s->add_option("--monoid", o.monoid, "Monoid JSON")->required();
    auto* m_push = monoid->add_subcommand("pushout", "fs pushout of two maps with common source");
    m_push->add_option("--f", o.f, "First hom")->required();
    m_push->add_option("--g", o.g, "Second hom")->required();

    auto* firm = app.add_subcommand("firm", "Firmness")->require_subcommand(1);
    auto* f_check = firm->add_subcommand("check", "Is the log point firm");
    f_check->add_option("--problem", o.problem, "Problem JSON")->required();
    f_check->add_option("--query", o.query, "Local map P -> R")->required();
    f_check->add_option("--method", o.method, "factorization or pushout")->check(CLI::IsMember({"factorization", "pushout"}));

    auto* fm = app.add_subcommand("firmament", "Firmaments")->require_subcommand(1);
    auto* fm_member = fm->add_subcommand("member", "Membership of an integral point");
    fm_member->add_option("--map", o.map, "Problem, chart or fan map JSON")->required();
    fm_member->add_option("--point", o.point, "[a,b,...] or [a,b,...]@cone")->required();
    auto* fm_contact = fm->add_subcommand("contact", "Contact order of a log point");
    fm_contact->add_option("--monoid", o.monoid, "Chart monoid P");
    fm_contact->add_option("--vals", o.vals, "[[element, valuation], ...]");
    fm_contact->add_option("--query", o.query, "Map P -> N");
    fm_contact->add_option("--map", o.map, "Also test membership in this firmament");
    auto* fm_svg = fm->add_subcommand("svg", "Draw a rank-2 firmament");
    fm_svg->add_option("--map", o.map, "Problem, chart or fan map JSON")->required();
    fm_svg->add_option("--box", o.box, "Box bound");
    fm_svg->add_option("-o", o.out, "Output file");

    auto* fan = app.add_subcommand("fan", "Fans")->require_subcommand(1);
    auto* fan_sub = fan->add_subcommand("subdivide", "Star subdivision");
    fan_sub->add_option("--fan", o.fan, "Fan JSON")->required();
    fan_sub->add_option("--ray", o.ray, "New ray")->required();
    auto* fan_ref = fan->add_subcommand("refine", "Common refinement");
    fan_ref->add_option("--fan", o.fan, "Fan JSON")->required();
    fan_ref->add_option("--with", o.other, "Second fan JSON")->required();
    auto* fan_sig = fan->add_subcommand("sigma-n", "The fan sigma_n");
    fan_sig->add_option("--rank", o.rank, "Rank (2 or 3)");
    fan_sig->add_option("--n", o.n, "Level")->required();
    auto* fan_pts = fan->add_subcommand("points", "Integral points in a box");
    fan_pts->add_option("--fan", o.fan, "Fan JSON")->required();
    for (auto* s : {fan_sub, fan_ref, fan_sig, fan_pts}) {
        s->add_option("--box", o.box, "Box bound");
        s->add_option("-o", o.out, "Also draw the fan to this SVG file");
    }

    auto* lift = app.add_subcommand("lift", "Lifting log points along monomial charts")->require_subcommand(1);
    auto* l_solve = lift->add_subcommand("solve", "Exponents and units of a lift");
    l_solve->add_option("--chart", o.chart, "n x m chart matrix")->required();
    l_solve->add_option("--vals", o.vals, "Valuations of the target coordinates")->required();
    l_solve->add_option("--residue-char", o.residue_char, "Residue characteristic");
    auto* l_primes = lift->add_subcommand("primes", "Primes where the chart fails to be log smooth");
    l_primes->add_option("--matrix,--mat", o.matrix, "Group-level chart matrix")->required();

    auto* camp = app.add_subcommand("campana", "Orbifold multiplicities")->require_subcommand(1);
    auto* c_mult = camp->add_subcommand("mult", "Multiplicity of a monomial ideal");
    c_mult->add_option("--ideal", o.ideal, "Ideal JSON")->required();
    c_mult->add_flag("--variants", o.variants, "Also report the alternative invariants");
    auto* c_member = camp->add_subcommand("member", "Campana condition at a point");
    c_member->add_option("--ideal", o.ideal, "Ideal JSON")->required();
    c_member->add_option("--vals", o.vals, "Valuations of the variables")->required();
    c_member->add_option("--m", o.m, "Multiplicity")->required();
    c_member->add_flag("--in-z", o.in_z, "The point lies in Z");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        int code = app.exit(e, out, err);
        CommandResult r;
        if (code == 0) {
            r.text = out.str();
            return r;
        }
        r.status = CommandStatus::Error;
        r.exit_code = 2;
        r.diagnostics.push_back(err.str().empty() ? e.what() : err.str());
        return r;
    }

    IlpOptions ilp;
    if (o.bound >= 0) ilp.node_budget = static_cast<std::size_t>(o.bound);
    auto fan_out = [&](const ConeComplex& c, Json payload) {
        if (!o.out.empty()) {
            write_file(o.out, fan_svg(c, o.box));
            payload["svg"] = o.out;
        }
        return ok(std::move(payload));
    };

    CommandResult r;
    try {
        if (m_sat->parsed()) {
            auto mon = monoid_from_json(load(o.monoid));
            Json p = monoid_to_json(mon);
            p["group_rank"] = mon.rank();
            r = ok(p);
        } else if (m_dual->parsed()) {
            r = ok(monoid_to_json(dual(monoid_from_json(load(o.monoid)))));
        } else if (m_faces->parsed()) {
            auto mon = monoid_from_json(load(o.monoid));
            Json fs = Json::array();
            for (const auto& f : faces(mon)) fs.push_back(face_to_json(mon, f));
            r = ok({{"faces", fs}});
        } else if (m_push->parsed()) {
            auto res = fs_pushout(hom_from_json(load(o.f)), hom_from_json(load(o.g)));
            Json tor = Json::array();
            for (const auto& t : res.torsion) tor.push_back(int_to_json(t));
            r = ok({{"free_rank", res.free_rank}, {"torsion", tor}, {"characteristic", monoid_to_json(res.characteristic)}});
        } else if (f_check->parsed()) {
            Json pj = load(o.problem);
            auto prob = problem_from_json(pj);
            Json qj = load(o.query);
            if (qj.is_object() && !qj.contains("source")) qj["source"] = pj.at("base");
            auto q = make_query(hom_from_json(qj));
            Json p = {{"method", o.method}};
            if (o.method == "pushout") {
                auto res = firm_check_pushout(prob, q, ilp);
                p["firm"] = res.firm;
                p["witness"] = res.firm ? Json{{"component", res.component}, {"face_dim", res.face.dim},
                                               {"retraction", hom_to_json(res.retraction)}}
                                        : Json(nullptr);
                r = answer(p, res.firm);
            } else {
                auto w = firm_check(prob, q, ilp);
                p["firm"] = w.has_value();
                p["witness"] = w ? Json{{"component", w->component}, {"h", hom_to_json(w->h)},
                                        {"induced_face", face_to_json(w->h.source(), w->induced_face)}}
                                 : Json(nullptr);
                r = answer(p, w.has_value());
            }
        } else if (fm_member->parsed()) {
            auto g = firmament_from_json(load(o.map));
            auto [coords, cone] = parse_point(o.point);
            bool member = firmament_member(g, locate(g.target, coords, cone), ilp);
            r = answer({{"member", member}}, member);
        } else if (fm_contact->parsed()) {
            ContactOrder c;
            if (!o.query.empty()) {
                c = contact_order(hom_from_json(load(o.query)));
            } else {
                if (o.monoid.empty() || o.vals.empty())
                    throw Error(ErrorCode::InvalidInput, "contact needs --query, or --monoid with --vals");
                std::map<IntVector, Int> vals;
                for (const auto& e : load(o.vals)) {
                    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidInput, "--vals entries are [element, valuation]");
                    vals[vector_from_json(e[0])] = int_from_json(e[1]);
                }
                c = contact_order(monoid_from_json(load(o.monoid)), vals);
            }
            Json p = {{"point", point_to_json(c.point)}};
            if (!o.map.empty()) {
                bool member = lies_in_firmament(firmament_from_json(load(o.map)), c);
                p["member"] = member;
                r = answer(p, member);
            } else {
                r = ok(p);
            }
        } else if (fm_svg->parsed()) {
            auto g = firmament_from_json(load(o.map));
            auto svg = firmament_svg(g, o.box);
            if (o.out.empty()) {
                r.text = svg;
            } else {
                write_file(o.out, svg);
                r = ok({{"svg", o.out}, {"members", firmament_enumerate_box(g, o.box).size()}});
            }
        } else if (fan_sub->parsed()) {
            auto s = star_subdivision(fan_from_json(load(o.fan)), vector_from_json(load(o.ray)));
            r = fan_out(s.fine, fan_to_json(s.fine));
        } else if (fan_ref->parsed()) {
            auto c = common_refinement(fan_from_json(load(o.fan)), fan_from_json(load(o.other)));
            r = fan_out(c, fan_to_json(c));
        } else if (fan_sig->parsed()) {
            if (o.rank < 1 || o.n < 1) throw Error(ErrorCode::InvalidInput, "rank and level must be positive");
            auto c = sigma_n(static_cast<std::size_t>(o.rank), static_cast<std::size_t>(o.n));
            r = fan_out(c, fan_to_json(c));
        } else if (fan_pts->parsed()) {
            auto c = fan_from_json(load(o.fan));
            Json pts = Json::array();
            for (const auto& p : lattice_points_box(c, o.box)) pts.push_back(point_to_json(p));
            r = fan_out(c, {{"points", pts}});
        } else if (l_solve->parsed()) {
            Json cj = load(o.chart);
            auto a = matrix_from_json(cj.is_object() ? cj.at("chart") : cj);
            std::optional<long> rc;
            if (o.residue_char >= 0) rc = o.residue_char;
            auto l = describe_lift(a, vector_from_json(load(o.vals)), rc, ilp);
            if (l) {
                Json p = lift_to_json(*l);
                p["in_firmament"] = true;
                r = ok(p);
            } else {
                r = answer({{"in_firmament", false}}, false);
            }
        } else if (l_primes->parsed()) {
            Json primes = Json::array();
            for (const auto& p : log_smooth_primes(matrix_from_json(load(o.matrix)))) primes.push_back(int_to_json(p));
            r = ok({{"primes", primes}});
        } else if (c_mult->parsed()) {
            auto i = ideal_from_json(load(o.ideal));
            Json p = {{"m", int_to_json(m_multiplicity(i))}};
            if (o.variants) {
                auto v = variant_multiplicities(i);
                p["m_a"] = int_to_json(v.m_a);
                p["m_b"] = int_to_json(v.m_b);
                p["m_c"] = int_to_json(v.m_c);
                p["m_d_threshold"] = int_to_json(v.m_d_threshold);
            }
            r = ok(p);
        } else if (c_member->parsed()) {
            auto i = ideal_from_json(load(o.ideal));
            auto n = intersection_multiplicity(i, {vector_from_json(load(o.vals)), o.in_z});
            bool member = campana_member(n, o.m);
            Json p = {{"member", member}, {"n", n.in_z ? Json("in_z") : int_to_json(n.n)}};
            r = answer(p, member);
        }
    } catch (const Error& e) {
        r = CommandResult{};
        r.status = CommandStatus::Error;
        r.exit_code = e.code() == ErrorCode::ResourceLimit ? 3 : 2;
        r.diagnostics.push_back(std::string(to_string(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        r = CommandResult{};
        r.status = CommandStatus::Error;
        r.exit_code = 2;
        r.diagnostics.push_back(e.what());
    }
    r.compact = o.compact;
    return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto r = dispatch(args);
    if (r.text) {
        out << *r.text;
    } else if (r.status != CommandStatus::Error) {
        out << (r.compact ? r.payload.dump() : r.payload.dump(2)) << "\n";
    }
    for (const auto& d : r.diagnostics) err << d << (d.ends_with('\n') ? "" : "\n");
    return r.exit_code;
}

}  // namespace logfirm
