#pragma once

// Command-line front end. `run` returns the process exit code:
// 0 success, 1 usage, 2 parse or validation error, 3 resource limit.

#include "wmerge/distance.hpp"
#include "wmerge/error.hpp"
#include "wmerge/formula.hpp"
#include "wmerge/geometry2d.hpp"
#include "wmerge/instancegen.hpp"
#include "wmerge/io.hpp"
#include "wmerge/maxcons.hpp"
#include "wmerge/merge.hpp"
#include "wmerge/postulates.hpp"
#include "wmerge/weights.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wmerge {

namespace cli_detail {

struct Options {
    std::string instance;
    std::string scheme;
    std::string distance;
    std::string out;
    std::string vectors;
    std::string postulate;
    bool json = false;
    bool disjunction = false;
    int k = 1;
    std::uint64_t seed = 1;
    std::size_t suite = 100;
};

inline DistanceKind parse_distance_option(const std::string& text) {
    if (text == "hamming") return DistanceKind::hamming();
    if (text == "drastic") return DistanceKind::drastic();
    if (text.starts_with("table:")) return load_distance_file(text.substr(6));
    throw ValidationError("unknown distance '" + text + "'");
}

inline DistanceKind pick_distance(const Options& o, const InstanceFile* f) {
    if (!o.distance.empty()) return parse_distance_option(o.distance);
    if (f && f->distance) return *f->distance;
    return DistanceKind::hamming();
}

inline WeightScheme pick_scheme(const Options& o, const InstanceFile* f) {
    if (!o.scheme.empty()) return parse_scheme(o.scheme);
    if (f && f->scheme) return *f->scheme;
    return WeightScheme::all_positive();
}

// Writes to --out when given, else to `out`.
inline void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ValidationError("cannot open '" + o.out + "' for writing");
    f << text;
}

inline std::string index_list(const std::vector<std::size_t>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i] + 1);
    }
    return s + "}";
}

inline std::vector<DistanceVector> parse_vectors(const std::string& text) {
    std::vector<DistanceVector> out;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        DistanceVector v;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos)
                throw ValidationError("invalid distance '" + cell + "' in vectors");
            if (cell.size() > 6) throw ValidationError("distance too large in vectors");
            v.push_back(std::stoll(cell));
        }
        if (v.empty()) throw ValidationError("empty vector in vectors");
        out.push_back(std::move(v));
    }
    if (out.empty()) throw ValidationError("no vectors given");
    return out;
}

inline std::string render_models(const ModelSet& models, const Universe& u, const MergeResult* r) {
    std::string s;
    for (const auto& m : models) {
        s += to_string(m, u);
        if (r) {
            auto it = r->witnesses.find(m);
            if (it != r->witnesses.end()) s += " " + it->second.str();
        }
        s += '\n';
    }
    return s;
}

inline int cmd_merge(const Options& o, std::ostream& out) {
    auto file = load_instance_file(o.instance);
    auto kind = pick_distance(o, &file);
    auto scheme = pick_scheme(o, &file);
    const auto& u = file.instance.universe;
    MergeResult r = file.sources ? multi_source_merge(u, file.instance.constraints, *file.sources, scheme, kind)
                                 : merge_scheme(file.instance, scheme, kind);
    if (o.json) {
        auto j = result_to_json(r, u);
        j["distance"] = distance_to_json(kind);
        j["scheme"] = scheme.str();
        emit(o, out, j.dump(2) + "\n");
    } else {
        const bool show = scheme.tag() == WeightScheme::Tag::AllPositive;
        emit(o, out, render_models(r.models, u, show ? &r : nullptr));
    }
    return 0;
}

inline int cmd_maxcons(const Options& o, std::ostream& out) {
    auto file = load_instance_file(o.instance);
    if (file.sources) throw ValidationError("maxcons works on a flat profile");
    const auto& inst = file.instance;
    validate(inst);
    auto sets = maxcons(inst);
    if (o.json) {
        Json j;
        Json arr = Json::array();
        for (const auto& s : sets) {
            Json one = Json::array();
            for (auto i : s) one.push_back(i + 1);
            arr.push_back(one);
        }
        j["maxcons"] = arr;
        if (o.disjunction) j["models"] = result_to_json(MergeResult{maxcons_disjunction(inst), {}}, inst.universe)["models"];
        emit(o, out, j.dump(2) + "\n");
        return 0;
    }
    std::string s;
    if (o.disjunction) {
        s = render_models(maxcons_disjunction(inst), inst.universe, nullptr);
    } else {
        for (const auto& m : sets) s += index_list(m) + "\n";
    }
    emit(o, out, s);
    return 0;
}

inline int cmd_realize(const Options& o, std::ostream& out) {
    auto inst = realize(VectorSpec{parse_vectors(o.vectors)});
    emit(o, out, instance_to_json(inst, DistanceKind::hamming()).dump(2) + "\n");
    return 0;
}

inline int cmd_blocks(const Options& o, std::ostream& out) {
    auto inst = replicated_blocks(o.k);
    emit(o, out, instance_to_json(inst, DistanceKind::hamming()).dump(2) + "\n");
    return 0;
}

inline int cmd_plot(const Options& o, std::ostream& out) {
    if (o.out.empty()) throw ValidationError("plot needs --out");
    auto file = load_instance_file(o.instance);
    if (file.sources) throw ValidationError("plot works on a flat profile");
    if (file.instance.profile.size() != 2) throw ValidationError("plot needs exactly two formulae");
    auto kind = pick_distance(o, &file);
    auto scheme = pick_scheme(o, &file);
    auto c = candidates(file.instance, kind);
    auto r = merge_scheme(file.instance, scheme, kind);
    std::vector<Point2> pts, sel;
    for (std::size_t i = 0; i < c.models.size(); ++i) {
        pts.push_back(to_point(c.vectors[i]));
        if (contains(r.models, c.models[i])) sel.push_back(pts.back());
    }
    render_svg(pts, sel, o.out);
    out << "wrote " << o.out << "\n";
    return 0;
}

inline int cmd_closest_pairs(const Options& o, std::ostream& out) {
    auto file = load_instance_file(o.instance);
    if (file.instance.profile.size() != 2) throw ValidationError("closest-pairs needs exactly two formulae");
    const auto& u = file.instance.universe;
    auto models = closest_pairs_merge(u, file.instance.profile[0], file.instance.profile[1]);
    if (o.json)
        emit(o, out, result_to_json(MergeResult{models, {}}, u).dump(2) + "\n");
    else
        emit(o, out, render_models(models, u, nullptr));
    return 0;
}

inline Verdict run_check_case(const std::string& name, const OperatorConfig& cfg, Xoshiro256& rng) {
    const std::size_t n = 1 + rng.below(4);
    auto draw = [&](std::size_t m) { return random_instance(n, m, rng.next()); };
    if (name == "majority") {
        auto two = draw(2);
        return check_majority(cfg, two.universe, two.profile[0], two.profile[1], 1 + rng.below(3));
    }
    if (name == "arbitration") return check_arbitration_duplicate(cfg, draw(1 + rng.below(3)));
    if (name == "disjunctive") {
        auto inst = draw(1 + rng.below(3));
        inst.constraints = Formula::constant(true);
        return check_disjunctive(cfg, inst);
    }
    auto id = parse_postulate(name);
    if (!id) throw ValidationError("unknown postulate '" + name + "'");
    PostulateAux aux;
    Instance inst = draw(1 + rng.below(3));
    switch (*id) {
    case PostulateId::IC4:
        inst = draw(2);
        inst.constraints = inst.constraints || inst.profile[0] || inst.profile[1];
        break;
    case PostulateId::IC5:
    case PostulateId::IC6:
        inst = draw(2 + rng.below(3));
        aux.split = 1 + rng.below(inst.profile.size() - 1);
        break;
    case PostulateId::IC7:
    case PostulateId::IC8: aux.mu_prime = draw(1).profile[0]; break;
    default: break;
    }
    return check_postulate(*id, cfg, inst, aux);
}

inline int cmd_check(const Options& o, std::ostream& out) {
    OperatorConfig cfg{pick_distance(o, nullptr), pick_scheme(o, nullptr)};
    Xoshiro256 rng(o.seed);
    std::size_t counts[3] = {0, 0, 0};
    std::optional<Verdict> first_fail;
    for (std::size_t i = 0; i < o.suite; ++i) {
        auto v = run_check_case(o.postulate, cfg, rng);
        ++counts[static_cast<int>(v.status)];
        if (v.status == Verdict::Status::Fail && !first_fail) first_fail = v;
    }
    Json j;
    j["postulate"] = o.postulate;
    j["distance"] = distance_to_json(cfg.kind);
    j["scheme"] = cfg.scheme.str();
    j["suite"] = o.suite;
    j["seed"] = o.seed;
    j["pass"] = counts[0];
    j["fail"] = counts[1];
    j["vacuous"] = counts[2];
    if (first_fail) {
        Json w = Json::array();
        for (const auto& x : first_fail->weights) w.push_back(weights_to_json(x));
        j["first_failure"] = Json{{"detail", first_fail->detail}, {"models", first_fail->models.size()}, {"weights", w}};
    }
    if (o.json) {
        emit(o, out, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream s;
    s << "postulate " << o.postulate << "  distance " << cfg.kind.name() << "  scheme " << cfg.scheme.str()
      << "  suite " << o.suite << "  seed " << o.seed << "\n";
    s << "pass     " << counts[0] << "\nfail     " << counts[1] << "\nvacuous  " << counts[2] << "\n";
    if (first_fail) {
        s << "first failure: " << first_fail->detail << "\n";
        for (const auto& w : first_fail->weights) s << "  weights " << w.str() << "\n";
    }
    emit(o, out, s.str());
    return 0;
}

}  // namespace cli_detail

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    Options o;
    CLI::App app{"Belief merging with unknown weights", "wmerge"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scheme", o.scheme, "equal | expert[:A] | all | list:W;W...");
        sub->add_option("--distance", o.distance, "drastic | hamming | table:FILE");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--out", o.out, "write output to FILE");
    };

    auto* merge_cmd = app.add_subcommand("merge", "merge the profile of an instance file");
    merge_cmd->add_option("--instance", o.instance, "instance file")->required();
    add_common(merge_cmd);

    auto* maxcons_cmd = app.add_subcommand("maxcons", "maximal consistent subsets of the profile");
    maxcons_cmd->add_option("--instance", o.instance, "instance file")->required();
    maxcons_cmd->add_flag("--disjunction", o.disjunction, "print the models of their disjunction");
    maxcons_cmd->add_flag("--json", o.json, "machine-readable output");
    maxcons_cmd->add_option("--out", o.out, "write output to FILE");

    auto* realize_cmd = app.add_subcommand("realize", "instance with the given Hamming distance vectors");
    realize_cmd->add_option("--vectors", o.vectors, "e.g. 3,0;2,2;0,3")->required();
    realize_cmd->add_option("--out", o.out, "write output to FILE");

    auto* blocks_cmd = app.add_subcommand("blocks", "replicated six-variable blocks");
    blocks_cmd->add_option("--k", o.k, "number of blocks (1-3)")->required();
    blocks_cmd->add_option("--out", o.out, "write output to FILE");

    auto* check_cmd = app.add_subcommand("check", "randomized postulate suite");
    check_cmd->add_option("--postulate", o.postulate, "ic0..ic8 | majority | arbitration | disjunctive")->required();
    check_cmd->add_option("--suite", o.suite, "number of random instances");
    check_cmd->add_option("--seed", o.seed, "random seed");
    add_common(check_cmd);

    auto* plot_cmd = app.add_subcommand("plot", "SVG of the distance points of a two-formula instance");
    plot_cmd->add_option("--instance", o.instance, "instance file")->required();
    add_common(plot_cmd);

    auto* pairs_cmd = app.add_subcommand("closest-pairs", "models in closest pairs of the two formulae");
    pairs_cmd->add_option("--instance", o.instance, "instance file")->required();
    pairs_cmd->add_flag("--json", o.json, "machine-readable output");
    pairs_cmd->add_option("--out", o.out, "write output to FILE");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (merge_cmd->parsed()) return cmd_merge(o, out);
        if (maxcons_cmd->parsed()) return cmd_maxcons(o, out);
        if (realize_cmd->parsed()) return cmd_realize(o, out);
        if (blocks_cmd->parsed()) return cmd_blocks(o, out);
        if (check_cmd->parsed()) return cmd_check(o, out);
        if (plot_cmd->parsed()) return cmd_plot(o, out);
        if (pairs_cmd->parsed()) return cmd_closest_pairs(o, out);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace wmerge
