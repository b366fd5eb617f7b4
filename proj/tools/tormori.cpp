// Command-line surface for the toric Mori engine: validate and inspect fans,
// analyze relative Mori cones, run contractions, flips and MMP steps, and
// answer relative positivity questions. Reports are deterministic; --json
// switches to a machine-readable form with a stable schema.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tormori/contract.hpp"
#include "tormori/json_io.hpp"
#include "tormori/positivity.hpp"

using namespace tormori;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMath = 2;

struct Options {
    bool json = false;
    bool assume_proper = false;
    std::string out;
};

struct Report {
    std::string command;
    std::vector<fs::path> inputs;
    json result = json::object();
    std::vector<std::string> diagnostics;

    std::uint64_t digest() const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the input bytes
        for (const auto& p : inputs) {
            std::ifstream in(p, std::ios::binary);
            char c;
            while (in.get(c)) {
                h ^= std::uint64_t(static_cast<unsigned char>(c));
                h *= 1099511628211ull;
            }
        }
        return h;
    }

    void print(const Options& opt) const {
        if (opt.json) {
            json j;
            j["command"] = command;
            std::ostringstream dg;
            dg << std::hex << digest();
            j["inputs_digest"] = dg.str();
            j["result"] = result;
            j["diagnostics"] = diagnostics;
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& d : diagnostics) std::cout << "note: " << d << "\n";
        }
    }
};

std::string rat_str(const Rat& q) { return to_string(q); }

json rat_list(const std::vector<Rat>& v) {
    json arr = json::array();
    for (const Rat& q : v) arr.push_back(rat_str(q));
    return arr;
}

std::string format_epr(const ExtremalPrimitiveRelation& epr) {
    std::string s;
    for (int i = 0; i < epr.l(); ++i) {
        if (i) s += " + ";
        s += to_string(epr.a[i]) + "*r" + std::to_string(epr.xs[i]);
    }
    s += " = ";
    if (epr.m() == 0) {
        s += "0";
    } else {
        for (int j = 0; j < epr.m(); ++j) {
            if (j) s += " + ";
            s += to_string(epr.b[j]) + "*r" + std::to_string(epr.ys[j]);
        }
    }
    return s;
}

json epr_to_json(const ExtremalPrimitiveRelation& epr) {
    json j;
    j["xs"] = epr.xs;
    json a = json::array();
    for (const Int& x : epr.a) a.push_back(to_string(x));
    j["a"] = a;
    j["ys"] = epr.ys;
    json b = json::array();
    for (const Int& x : epr.b) b.push_back(to_string(x));
    j["b"] = b;
    j["text"] = format_epr(epr);
    j["degree"] = to_string(epr.degree());
    return j;
}

// Gate shared by every subcommand that relies on NE(X/Y): the morphism must
// be compatible, and proper either by proof or by assertion.
int require_proper(const FanMorphism& m, const Options& opt, Report& rep) {
    auto compat = check_morphism(m);
    if (!compat.ok()) {
        for (const auto& p : compat.problems)
            std::cerr << "error: " << p << "\n";
        return kExitMath;
    }
    switch (verify_properness(m)) {
        case Properness::Proven:
            rep.diagnostics.push_back("properness: proven");
            return kExitOk;
        case Properness::Refuted:
            std::cerr << "error: morphism is not proper (support mismatch)\n";
            return kExitMath;
        case Properness::Unknown:
            if (opt.assume_proper) {
                rep.diagnostics.push_back("properness: assumed (--assume-proper)");
                return kExitOk;
            }
            std::cerr << "error: properness is undecided for this morphism; "
                         "pass --assume-proper to assert it\n";
            return kExitInput;
    }
    return kExitInput;
}

json wall_to_json(const Fan& f, const ContractedCurve& c) {
    json j;
    j["face"] = c.wall.face.rays;
    json coeffs = json::object();
    for (const auto& [ray, v] : c.relation.coeffs)
        coeffs[std::to_string(ray)] = to_string(v);
    j["relation"] = coeffs;
    j["class"] = rat_list(c.cls.coeffs);
    j["class_normalization"] =
        c.cls.normalization == ClassNormalization::IntersectionCalibrated
            ? "intersection"
            : "primitive";
    return j;
}

struct RayView {
    int index;  // position in the extremal listing
    int group;  // position in the analysis
    ExtremalPrimitiveRelation epr;
};

std::vector<RayView> extremal_views(const FanMorphism& m, const MoriAnalysis& an) {
    std::vector<RayView> out;
    for (int i = 0; i < int(an.extremal.size()); ++i)
        out.push_back({i, an.extremal[i],
                       extremal_primitive_relation(m, an, an.extremal[i])});
    return out;
}

json mori_to_json(const FanMorphism& m, const MoriAnalysis& an,
                  const std::vector<RayView>& views) {
    json j;
    json walls = json::array();
    for (const auto& c : an.contracted) walls.push_back(wall_to_json(m.source, c));
    j["contracted_walls"] = walls;
    json rays = json::array();
    for (std::size_t g = 0; g < an.rays.size(); ++g) {
        json r;
        r["class"] = rat_list(an.rays[g].cls.coeffs);
        r["walls"] = an.rays[g].wall_ids;
        r["extremal"] = an.rays[g].extremal;
        if (!an.rays[g].extremal) r["witness"] = rat_list(an.rays[g].witness);
        rays.push_back(std::move(r));
    }
    j["ray_groups"] = rays;
    json ext = json::array();
    for (const auto& v : views) {
        json r;
        r["index"] = v.index;
        r["class"] = rat_list(an.rays[v.group].cls.coeffs);
        r["relation"] = epr_to_json(v.epr);
        r["kind"] = to_string(classify(v.epr));
        if (classify(v.epr) == ContractionKind::Small)
            r["trichotomy"] = to_string(trichotomy_of(v.epr));
        ext.push_back(std::move(r));
    }
    j["extremal_rays"] = ext;
    j["relative_picard_number"] = an.relative_picard_number;
    return j;
}

void print_mori_text(const FanMorphism& m, const MoriAnalysis& an,
                     const std::vector<RayView>& views) {
    std::cout << "contracted walls: " << an.contracted.size() << "\n";
    for (const auto& c : an.contracted) {
        std::cout << "  wall {";
        for (std::size_t i = 0; i < c.wall.face.rays.size(); ++i)
            std::cout << (i ? "," : "") << c.wall.face.rays[i];
        std::cout << "}  class (";
        for (std::size_t i = 0; i < c.cls.coeffs.size(); ++i)
            std::cout << (i ? "," : "") << rat_str(c.cls.coeffs[i]);
        std::cout << ")\n";
    }
    std::cout << "relative Picard number: " << an.relative_picard_number << "\n";
    std::cout << "extremal rays: " << views.size() << "\n";
    for (const auto& v : views) {
        std::cout << "  ray " << v.index << ": " << to_string(classify(v.epr))
                  << "  " << format_epr(v.epr);
        if (classify(v.epr) == ContractionKind::Small)
            std::cout << "  (" << to_string(trichotomy_of(v.epr)) << ")";
        std::cout << "\n";
    }
}

int cmd_validate(const fs::path& file, const Options& opt) {
    Report rep;
    rep.command = "validate " + file.string();
    rep.inputs = {file};
    Fan f = load_fan(file);
    auto v = validate_fan(f);
    rep.result["valid"] = v.ok();
    rep.result["problems"] = v.problems;
    rep.print(opt);
    if (!opt.json) {
        if (v.ok()) {
            std::cout << "valid fan: rank " << f.rank << ", " << f.ray_count()
                      << " rays, " << f.max_cones.size() << " maximal cones";
            if (!f.general_cones.empty())
                std::cout << ", " << f.general_cones.size() << " general cones";
            std::cout << "\n";
        } else {
            for (const auto& p : v.problems) std::cout << "invalid: " << p << "\n";
        }
    }
    return v.ok() ? kExitOk : kExitMath;
}

int cmd_info(const fs::path& file, const Options& opt) {
    Report rep;
    rep.command = "info " + file.string();
    rep.inputs = {file};
    Fan f = load_fan(file);
    auto v = validate_fan(f);
    if (!v.ok()) {
        for (const auto& p : v.problems) std::cerr << "error: " << p << "\n";
        return kExitMath;
    }
    rep.result["rank"] = f.rank;
    rep.result["rays"] = f.ray_count();
    rep.result["max_cones"] = f.max_cones.size();
    rep.result["general_cones"] = f.general_cones.size();
    rep.result["simplicial"] = f.simplicial();
    bool complete = f.simplicial() && is_complete(f);
    bool smooth = f.simplicial() && is_smooth(f);
    rep.result["complete"] = complete;
    rep.result["smooth"] = smooth;
    if (f.simplicial()) {
        json pcs = json::array();
        for (const auto& pc : primitive_collections(f)) pcs.push_back(pc);
        rep.result["primitive_collections"] = pcs;
        if (auto w = recognize_wps(f)) {
            json weights = json::array();
            for (const Int& x : *w) weights.push_back(to_string(x));
            rep.result["weighted_projective_space"] = weights;
        }
    }
    rep.print(opt);
    if (!opt.json) {
        std::cout << "rank " << f.rank << ", " << f.ray_count() << " rays, "
                  << f.max_cones.size() << " maximal cones, "
                  << f.general_cones.size() << " general cones\n";
        std::cout << "simplicial: " << (f.simplicial() ? "yes" : "no")
                  << "  complete: " << (complete ? "yes" : "no")
                  << "  smooth: " << (smooth ? "yes" : "no") << "\n";
        if (f.simplicial()) {
            std::cout << "primitive collections:";
            for (const auto& pc : primitive_collections(f)) {
                std::cout << " {";
                for (std::size_t i = 0; i < pc.size(); ++i)
                    std::cout << (i ? "," : "") << pc[i];
                std::cout << "}";
            }
            std::cout << "\n";
            if (auto w = recognize_wps(f)) {
                std::cout << "weighted projective space P(";
                for (std::size_t i = 0; i < w->size(); ++i)
                    std::cout << (i ? "," : "") << to_string((*w)[i]);
                std::cout << ")\n";
            }
        }
    }
    return kExitOk;
}

int cmd_mori(const fs::path& file, const Options& opt) {
    Report rep;
    rep.command = "mori " + file.string();
    rep.inputs = {file};
    FanMorphism m = load_morphism(file);
    if (int rc = require_proper(m, opt, rep)) return rc;
    auto an = analyze_mori(m);
    auto views = extremal_views(m, an);
    rep.result = mori_to_json(m, an, views);
    rep.print(opt);
    if (!opt.json) print_mori_text(m, an, views);
    return kExitOk;
}

int cmd_contract(const fs::path& file, int ray, const Options& opt) {
    Report rep;
    rep.command = "contract " + file.string() + " --ray " + std::to_string(ray);
    rep.inputs = {file};
    FanMorphism m = load_morphism(file);
    if (int rc = require_proper(m, opt, rep)) return rc;
    auto an = analyze_mori(m);
    auto views = extremal_views(m, an);
    if (ray < 0 || ray >= int(views.size())) {
        std::cerr << "error: ray index out of range (have " << views.size()
                  << " extremal rays)\n";
        return kExitInput;
    }
    const auto& epr = views[ray].epr;
    ContractionResult res;
    if (classify(epr) == ContractionKind::Fano)
        res = fano_contraction(m, epr);
    else
        res = birational_contraction(m, epr);

    rep.result["kind"] = to_string(res.kind);
    rep.result["relation"] = epr_to_json(epr);
    rep.result["target_fan"] = fan_to_json(res.target_fan);
    if (res.quotient) rep.result["quotient_matrix"] = matrix_to_json(res.quotient->map);
    if (res.fiber) {
        json fib;
        json w = json::array();
        for (const Int& x : res.fiber->weights) w.push_back(to_string(x));
        fib["weights"] = w;
        fib["lattice_rank"] = res.fiber->lattice_rank;
        fib["is_weighted_projective_space"] = res.fiber->wps_weights.has_value();
        rep.result["fiber"] = fib;
    }
    if (res.codim_A) {
        rep.result["codim_A"] = *res.codim_A;
        rep.result["dim_B"] = *res.dim_B;
    }
    if (!opt.out.empty()) save_json_file(opt.out, fan_to_json(res.target_fan));
    rep.print(opt);
    if (!opt.json) {
        std::cout << "kind: " << to_string(res.kind) << "\n";
        std::cout << "relation: " << format_epr(epr) << "\n";
        if (res.fiber) {
            std::cout << "general fiber: ";
            if (res.fiber->wps_weights) {
                std::cout << "P(";
                for (std::size_t i = 0; i < res.fiber->wps_weights->size(); ++i)
                    std::cout << (i ? "," : "")
                              << to_string((*res.fiber->wps_weights)[i]);
                std::cout << ")";
            } else {
                std::cout << "Picard-number-one variety, weights (";
                for (std::size_t i = 0; i < res.fiber->weights.size(); ++i)
                    std::cout << (i ? "," : "") << to_string(res.fiber->weights[i]);
                std::cout << ")";
            }
            std::cout << "\n";
        }
        if (res.codim_A)
            std::cout << "codim A = " << *res.codim_A << ", dim B = " << *res.dim_B
                      << "\n";
        if (!opt.out.empty()) std::cout << "target fan written to " << opt.out << "\n";
    }
    return kExitOk;
}

int cmd_flip(const fs::path& file, int ray, const Options& opt) {
    Report rep;
    rep.command = "flip " + file.string() + " --ray " + std::to_string(ray);
    rep.inputs = {file};
    FanMorphism m = load_morphism(file);
    if (int rc = require_proper(m, opt, rep)) return rc;
    auto an = analyze_mori(m);
    auto views = extremal_views(m, an);
    if (ray < 0 || ray >= int(views.size())) {
        std::cerr << "error: ray index out of range (have " << views.size()
                  << " extremal rays)\n";
        return kExitInput;
    }
    const auto& epr = views[ray].epr;
    if (classify(epr) != ContractionKind::Small) {
        std::cerr << "error: not a small contraction\n";
        return kExitMath;
    }
    auto res = flip(m, epr);
    rep.result["trichotomy"] = to_string(*res.trichotomy);
    rep.result["relation"] = epr_to_json(epr);
    rep.result["reversed_relation"] = epr_to_json(*res.reversed);
    rep.result["flip_fan"] = fan_to_json(*res.flip_fan);
    if (!opt.out.empty()) save_json_file(opt.out, fan_to_json(*res.flip_fan));
    rep.print(opt);
    if (!opt.json) {
        std::cout << "trichotomy: " << to_string(*res.trichotomy) << "\n";
        std::cout << "relation: " << format_epr(epr) << "\n";
        std::cout << "reversed relation: " << format_epr(*res.reversed) << "\n";
        if (!opt.out.empty())
            std::cout << "flipped fan written to " << opt.out << "\n";
    }
    return kExitOk;
}

int cmd_positivity(const fs::path& file, const fs::path& divisor_file,
                   const std::string& check, std::vector<int> twist_free,
                   int twist_ample, long long twist_bound, const Options& opt) {
    Report rep;
    rep.command = "positivity " + file.string();
    rep.inputs = {file, divisor_file};
    FanMorphism m = load_morphism(file);
    if (int rc = require_proper(m, opt, rep)) return rc;
    TorusDivisor D = divisor_from_json(load_json_file(divisor_file), m.source);

    auto an = analyze_mori(m);
    bool need_smooth = !twist_free.empty() || twist_ample >= 0 || twist_bound > 0;
    if (need_smooth && !is_smooth(m.source)) {
        std::cerr << "error: this check requires a smooth source fan\n";
        return kExitMath;
    }

    if (!check.empty()) {
        if (check == "free" && !D.integral()) {
            std::cerr << "error: freeness requires an integral divisor\n";
            return kExitInput;
        }
        auto res = relative_positivity(m, D);
        rep.result["check"] = check;
        rep.result["verdict"] = to_string(res.verdict);
        rep.result["values"] = rat_list(res.values);
        if (res.witness_wall) {
            rep.result["witness_wall"] =
                an.contracted[*res.witness_wall].wall.face.rays;
        }
        bool pass = false;
        if (check == "ample") pass = res.verdict == PositivityVerdict::Ample;
        else if (check == "nef") pass = res.verdict != PositivityVerdict::NotNef;
        else if (check == "free") pass = *res.f_free;
        else {
            std::cerr << "error: unknown check '" << check << "'\n";
            return kExitInput;
        }
        rep.result["holds"] = pass;
        rep.print(opt);
        if (!opt.json) {
            std::cout << check << ": " << (pass ? "yes" : "no")
                      << "  (verdict: " << to_string(res.verdict) << ")\n";
            if (res.witness_wall) {
                std::cout << "witness wall: {";
                const auto& fr = an.contracted[*res.witness_wall].wall.face.rays;
                for (std::size_t i = 0; i < fr.size(); ++i)
                    std::cout << (i ? "," : "") << fr[i];
                std::cout << "}\n";
            }
        }
        return kExitOk;
    }

    if (!twist_free.empty()) {
        if (twist_free.size() != 2) {
            std::cerr << "error: --twist-free takes exactly two ray indices\n";
            return kExitInput;
        }
        auto v = two_divisor_free_criterion(m, an, D, twist_free[0], twist_free[1]);
        rep.result["twist_free"] = v.positive;
        if (v.witness_ray) rep.result["witness_ray"] = *v.witness_ray;
        rep.result["direct_check_agrees"] = true;  // a mismatch throws
        rep.print(opt);
        if (!opt.json) {
            std::cout << "L(-D" << twist_free[0] << "-D" << twist_free[1] << ") is "
                      << (v.positive ? "f-free" : "not f-free");
            if (v.witness_ray) std::cout << "; witness: ray " << *v.witness_ray;
            std::cout << "; direct check agrees\n";
        }
        return kExitOk;
    }

    if (twist_ample >= 0) {
        auto v = one_divisor_ample_criterion(m, an, D, twist_ample);
        rep.result["twist_ample"] = v.positive;
        if (v.witness_ray) rep.result["witness_ray"] = *v.witness_ray;
        rep.result["direct_check_agrees"] = true;
        rep.print(opt);
        if (!opt.json) {
            std::cout << "L(-D" << twist_ample << ") is "
                      << (v.positive ? "f-ample" : "not f-ample");
            if (v.witness_ray) std::cout << "; witness: ray " << *v.witness_ray;
            std::cout << "; direct check agrees\n";
        }
        return kExitOk;
    }

    if (twist_bound > 0) {
        auto r = twist_free_bound(m, an, D, Int(twist_bound));
        rep.result["hypothesis_holds"] = r.hypothesis_holds;
        rep.result["min_pairing"] = rat_str(r.min_pairing);
        if (r.hypothesis_holds) {
            rep.result["min_twisted"] = rat_str(r.min_twisted);
            rep.result["bound_holds"] = r.bound_holds;
            if (!r.twist_free.empty()) {
                json tf = json::array();
                for (bool b : r.twist_free) tf.push_back(b);
                rep.result["twists_free"] = tf;
            }
        } else {
            rep.result["violating_ray"] = *r.violating_ray;
        }
        rep.print(opt);
        if (!opt.json) {
            if (!r.hypothesis_holds) {
                std::cout << "hypothesis fails: ray " << *r.violating_ray
                          << " pairs below the threshold\n";
            } else {
                std::cout << "hypothesis holds (min pairing "
                          << rat_str(r.min_pairing) << "); min twisted pairing "
                          << rat_str(r.min_twisted) << "; bound "
                          << (r.bound_holds ? "holds" : "fails") << "\n";
            }
        }
        return kExitOk;
    }

    std::cerr << "error: choose one of --check, --twist-free, --twist-ample, "
                 "--twist-bound\n";
    return kExitInput;
}

int cmd_mmp(const fs::path& file, const std::string& choices_csv,
            const Options& opt) {
    Report rep;
    rep.command = "mmp " + file.string() + " --ray-choice " + choices_csv;
    rep.inputs = {file};
    std::vector<int> choices;
    {
        std::stringstream ss(choices_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                choices.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                std::cerr << "error: bad ray choice '" << tok << "'\n";
                return kExitInput;
            }
        }
    }
    FanMorphism m = load_morphism(file);
    if (int rc = require_proper(m, opt, rep)) return rc;
    if (!opt.json)
        for (const auto& d : rep.diagnostics) std::cout << "note: " << d << "\n";

    json trace = json::array();
    int step_no = 0;
    std::string halt = "exhausted choices";
    for (int choice : choices) {
        auto an = analyze_mori(m);
        auto views = extremal_views(m, an);
        if (views.empty()) { halt = "no extremal rays"; break; }
        if (choice < 0 || choice >= int(views.size())) {
            std::cerr << "error: ray choice " << choice << " out of range (have "
                      << views.size() << " extremal rays)\n";
            return kExitInput;
        }
        auto step = mmp_step(m, an, an.extremal[choice]);
        json entry;
        entry["step"] = step_no;
        entry["ray"] = choice;
        entry["kind"] = to_string(step.kind);
        entry["relation"] = format_epr(views[choice].epr);
        if (step.trich) entry["trichotomy"] = to_string(*step.trich);
        if (!opt.out.empty()) {
            fs::path p = opt.out + ".step" + std::to_string(step_no) + ".fan.json";
            const Fan& written = step.next ? step.next->source
                                           : step.contraction.target_fan;
            save_json_file(p, fan_to_json(written));
            entry["fan_file"] = p.string();
        }
        if (!opt.json) {
            std::cout << "step " << step_no << ": ray " << choice << " is "
                      << to_string(step.kind);
            if (step.trich) std::cout << " (" << to_string(*step.trich) << ")";
            std::cout << "  " << format_epr(views[choice].epr) << "\n";
        }
        trace.push_back(std::move(entry));
        ++step_no;
        if (step.outcome == MmpStep::Outcome::MoriFiberSpace) {
            halt = "Mori fiber space";
            break;
        }
        if (step.outcome == MmpStep::Outcome::HaltNonFlipSmall) {
            halt = "non-flip small ray (" + std::string(to_string(*step.trich)) + ")";
            break;
        }
        m = *step.next;
    }
    rep.result["trace"] = trace;
    rep.result["halt"] = halt;
    if (opt.json) rep.print(opt);
    else std::cout << "halt: " << halt << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toric Mori theory: fans, extremal contractions, flips, "
                 "relative positivity"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.json, "machine-readable JSON report");
    app.add_option("--out", opt.out, "output file (or prefix for mmp)");
    app.add_flag("--assume-proper", opt.assume_proper,
                 "assert properness of the morphism when it is undecidable");

    std::string fan_file, morphism_file, divisor_file, check, ray_choices;
    int ray = -1, twist_ample = -1;
    long long twist_bound = 0;
    std::vector<int> twist_free;

    auto* validate = app.add_subcommand("validate", "validate a fan file");
    validate->add_option("fan", fan_file, "fan JSON file")->required();

    auto* info = app.add_subcommand("info", "summary of a fan file");
    info->add_option("fan", fan_file, "fan JSON file")->required();

    auto* mori = app.add_subcommand(
        "mori", "contracted walls, curve classes and extremal rays of NE(X/Y)");
    mori->add_option("morphism", morphism_file, "morphism JSON file")->required();

    auto* contract = app.add_subcommand("contract", "contract an extremal ray");
    contract->add_option("morphism", morphism_file)->required();
    contract->add_option("--ray", ray, "extremal ray index")->required();

    auto* flip_cmd = app.add_subcommand("flip", "flip a small extremal ray");
    flip_cmd->add_option("morphism", morphism_file)->required();
    flip_cmd->add_option("--ray", ray, "extremal ray index")->required();

    auto* positivity =
        app.add_subcommand("positivity", "relative nef/ample/free questions");
    positivity->add_option("morphism", morphism_file)->required();
    positivity->add_option("--divisor", divisor_file, "divisor JSON file")
        ->required();
    positivity->add_option("--check", check, "nef | ample | free");
    positivity->add_option("--twist-free", twist_free,
                           "two ray indices: is L(-D1-D2) f-free?")
        ->expected(2);
    positivity->add_option("--twist-ample", twist_ample,
                           "one ray index: is L(-D) f-ample?");
    positivity->add_option("--twist-bound", twist_bound,
                           "threshold t: check (L.C) >= t and the twist bound");

    auto* mmp = app.add_subcommand("mmp", "run minimal model program steps");
    mmp->add_option("morphism", morphism_file)->required();
    mmp->add_option("--ray-choice", ray_choices, "comma-separated ray indices")
        ->required();

    for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(fan_file, opt);
        if (*info) return cmd_info(fan_file, opt);
        if (*mori) return cmd_mori(morphism_file, opt);
        if (*contract) return cmd_contract(morphism_file, ray, opt);
        if (*flip_cmd) return cmd_flip(morphism_file, ray, opt);
        if (*positivity)
            return cmd_positivity(morphism_file, divisor_file, check, twist_free,
                                  twist_ample, twist_bound, opt);
        if (*mmp) return cmd_mmp(morphism_file, ray_choices, opt);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
