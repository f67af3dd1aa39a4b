// collgrid — command-line front end for the collision-grid toolkit.
//
// Subcommands: simulate, classify, verify, carve, percolate, search, count,
// render. Every command reads a pattern or trace document from disk, never
// from environment variables, and writes deterministic output: running the
// same invocation twice produces identical bytes on stdout and in every file.
//
// Exit codes: 0 success, 1 domain failure (stabilizer mismatch, search
// exhausted, size caps), 2 malformed input or bad usage.

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collgrid/export.hpp"
#include "collgrid/search.hpp"

namespace {

using namespace collgrid;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

// Filename without directory or extension, for deriving output names.
std::string stem_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name.resize(dot);
    return name;
}

struct LoadedDocument {
    PatternDocument doc;
    std::optional<RunTrace> trace;  // present when the file was a trace log
};

// Pattern and trace files share a header; the `events` section tells them
// apart, so both are accepted wherever either makes sense.
LoadedDocument load_document(const std::string& path) {
    const std::string text = read_file(path);
    LoadedDocument loaded;
    if (looks_like_trace(text)) {
        auto [doc, trace] = parse_trace(text);
        loaded.doc = std::move(doc);
        loaded.trace = std::move(trace);
    } else {
        loaded.doc = parse_pattern(text);
    }
    return loaded;
}

// Command-line overrides. Changing the timestep budget only works for the
// basic entry schedule, where the extension is implied; an explicit schedule
// pins its own length.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> timesteps;
    std::optional<double> edge_prob;

    void apply(SimulationConfig& cfg) const {
        if (seed) cfg.rng_seed = *seed;
        if (edge_prob) cfg.edge_probability = *edge_prob;
        if (timesteps && *timesteps != cfg.total_timesteps) {
            if (!is_basic_schedule(cfg.schedule))
                throw std::invalid_argument("--timesteps cannot override an explicit schedule");
            cfg.total_timesteps = *timesteps;
            cfg.schedule = make_basic_schedule(cfg.grid, *timesteps);
        }
        cfg.validate();
    }
};

// The trace for a loaded document: reuse the recorded events, or run fresh.
RunTrace obtain_trace(const LoadedDocument& loaded) {
    if (loaded.trace) return *loaded.trace;
    return run(loaded.doc.config);
}

std::string topology_of(const SimpleGraph& g) {
    if (g.n > 64) return "Oversize(" + std::to_string(g.n) + ")";
    return topology_to_string(classify(g));
}

void print_count_report(std::ostream& out, const CountReport& report) {
    out << "side_length " << report.L << "\n";
    out << "timesteps " << report.T << "\n";
    out << "components_total " << report.components_total << "\n";
    out << "components_complete " << report.components_complete << "\n";
    out << "components_incomplete " << report.components_incomplete << "\n";
    out << "components_interior " << report.components_interior << "\n";
    out << "isolated_vertices " << report.isolated_vertices << "\n";
    out << "max_component_order " << report.max_component_order << "\n";
    out << "max_degree " << report.max_degree << "\n";
    out << "modal_topology " << (report.modal_topology.empty() ? "-" : report.modal_topology) << "\n";
    out << "copies_of_modal_topology " << report.copies_of_modal_topology << "\n";
}

// A single component re-wrapped for the graph exporters.
LabeledGraph labeled_from_component(const Component& comp) {
    LabeledGraph g;
    g.vertices = comp.tags;
    g.edges = comp.graph.edges;
    g.component_id.assign(static_cast<std::size_t>(comp.order()), 0);
    g.component_complete = {static_cast<char>(comp.complete ? 1 : 0)};
    g.vertex_complete.assign(static_cast<std::size_t>(comp.order()),
                             static_cast<char>(comp.complete ? 1 : 0));
    return g;
}

// "H.1.2" — axis, lane, generation. Direction is recovered from the graph.
VertexTag parse_tag_text(const std::string& text) {
    auto first = text.find('.');
    auto second = text.find('.', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos || second + 1 >= text.size() ||
        first != 1 || (text[0] != 'H' && text[0] != 'V'))
        throw std::invalid_argument("bad vertex label '" + text + "' (expected H.lane.gen or V.lane.gen)");
    VertexTag tag;
    tag.axis = text[0] == 'H' ? Axis::H : Axis::V;
    try {
        std::size_t used = 0;
        tag.lane = std::stoi(text.substr(first + 1, second - first - 1), &used);
        if (first + 1 + used != second) throw std::invalid_argument("trailing junk");
        tag.generation = std::stoi(text.substr(second + 1), &used);
        if (second + 1 + used != text.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad vertex label '" + text + "' (expected H.lane.gen or V.lane.gen)");
    }
    if (tag.lane < 1 || tag.generation < 1)
        throw std::invalid_argument("bad vertex label '" + text + "': lane and generation start at 1");
    return tag;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (start <= text.size()) {
        auto end = text.find(sep, start);
        if (end == std::string::npos) end = text.size();
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

double parse_probability(const std::string& text) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::invalid_argument("bad probability '" + text + "'");
    return value;
}

// ---------------------------------------------------------------------------
// Per-subcommand option bags and runners.

struct SimulateArgs {
    std::string input;
    std::string out_dir = ".";
    std::string format = "dot";
    Overrides overrides;
};

int run_simulate(const SimulateArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);
    RunTrace trace = run(loaded.doc.config);

    const std::string stem = args.out_dir + "/" + stem_of(args.input);
    write_file(stem + ".trace", serialize_trace(loaded.doc, trace));
    std::cout << "wrote " << stem << ".trace\n";

    if (args.format == "dot") {
        write_file(stem + ".dot", dot_export(extract_graph(trace)));
        std::cout << "wrote " << stem << ".dot\n";
    } else if (args.format == "json") {
        write_file(stem + ".json", json_export(extract_graph(trace)));
        std::cout << "wrote " << stem << ".json\n";
    } else {  // ascii
        write_file(stem + ".txt", render_mask(loaded.doc.config.mask));
        std::cout << "wrote " << stem << ".txt\n";
    }
    print_count_report(std::cout, count_structures(trace));
    return 0;
}

struct ClassifyArgs {
    std::string input;
    Overrides overrides;
};

int run_classify(const ClassifyArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);
    RunTrace trace = obtain_trace(loaded);
    LabeledGraph graph = extract_graph(trace);
    std::vector<Component> comps = split_components(graph);

    for (std::size_t i = 0; i < comps.size(); ++i) {
        const Component& c = comps[i];
        std::cout << "component " << i << " order=" << c.order() << " size=" << c.graph.edges.size()
                  << " complete=" << (c.complete ? "yes" : "no") << " kappa=";
        for (std::size_t k = 0; k < c.kappas.size(); ++k)
            std::cout << (k ? "," : "") << c.kappas[k];
        std::cout << " topology=" << topology_of(c.graph) << "\n";
    }
    CountReport report = count_structures(trace);
    if (!report.modal_topology.empty())
        std::cout << "modal " << report.modal_topology << " x" << report.copies_of_modal_topology << "\n";
    return 0;
}

struct VerifyArgs {
    std::string input;
    int component = -1;  // -1: every component
    std::string dump_path;
    Overrides overrides;
};

int run_verify(const VerifyArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);
    std::vector<Component> comps = split_components(extract_graph(obtain_trace(loaded)));
    if (comps.empty()) throw std::runtime_error("nothing to verify: graph has no components");

    std::vector<std::size_t> chosen;
    if (args.component >= 0) {
        if (args.component >= static_cast<int>(comps.size()))
            throw std::invalid_argument("--component " + std::to_string(args.component) + " out of range (" +
                                        std::to_string(comps.size()) + " components)");
        chosen.push_back(static_cast<std::size_t>(args.component));
    } else {
        for (std::size_t i = 0; i < comps.size(); ++i) chosen.push_back(i);
    }
    if (!args.dump_path.empty() && chosen.size() != 1)
        throw std::invalid_argument("--dump-amplitudes needs a single component (use --component)");

    bool all_pass = true;
    for (std::size_t i : chosen) {
        const Component& comp = comps[i];
        QuantumRegister reg = build_graph_state(comp);
        int fixed = count_fixed_stabilizers(reg, comp.graph);
        if (chosen.size() == 1)
            std::cout << "stabilizers: " << fixed << "/" << comp.order() << " pass\n";
        else
            std::cout << "component " << i << ": stabilizers: " << fixed << "/" << comp.order()
                      << " pass\n";
        all_pass = all_pass && fixed == comp.order();
        if (!args.dump_path.empty()) write_file(args.dump_path, amplitude_dump(reg));
    }
    return all_pass ? 0 : 1;
}

struct CarveArgs {
    std::string input;
    std::string keep;
    std::string out_dir;
    std::string format = "dot";
    Overrides overrides;
};

int run_carve(const CarveArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);
    std::vector<Component> comps = split_components(extract_graph(obtain_trace(loaded)));

    std::vector<VertexTag> keep;
    for (const std::string& part : split_list(args.keep, ','))
        if (!part.empty()) keep.push_back(parse_tag_text(part));
    if (keep.empty()) throw std::invalid_argument("--keep lists no vertices");

    // All kept vertices must live in one component; find it by the first tag.
    const Component* home = nullptr;
    for (const Component& c : comps)
        if (std::binary_search(c.tags.begin(), c.tags.end(), keep.front())) home = &c;
    if (home == nullptr)
        throw std::invalid_argument("vertex " + tag_label(keep.front()) + " not present in the graph");

    Component carved = carve_unit_cell(*home, keep);
    LabeledGraph out_graph = labeled_from_component(carved);
    const std::string body = args.format == "json" ? json_export(out_graph) : dot_export(out_graph);

    if (args.out_dir.empty()) {
        std::cout << body;
    } else {
        const std::string path =
            args.out_dir + "/" + stem_of(args.input) + ".carved." + (args.format == "json" ? "json" : "dot");
        write_file(path, body);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

struct PercolateArgs {
    std::string input;
    std::string p_grid = "0,0.25,0.5,0.75,1";
    int trials = 200;
    std::string property = "complete";
    bool coupled = false;
    int threads = 1;
    Overrides overrides;
};

int run_percolate(const PercolateArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);

    std::vector<double> grid;
    for (const std::string& part : split_list(args.p_grid, ','))
        if (!part.empty()) grid.push_back(parse_probability(part));

    TrialProperty property =
        args.property == "span" ? TrialProperty::SpansTargetOrder : TrialProperty::ComponentComplete;
    PercolationReport report =
        percolation_sweep(loaded.doc.config, grid, args.trials, property, args.coupled, args.threads);

    std::cout << percolation_csv(report);
    std::cerr << "copies " << report.copy_count << " x " << report.copy_topology << " (order "
              << report.copy_order << ")\n";
    if (std::isnan(report.p_critical))
        std::cerr << "p_critical nan\n";
    else
        std::cerr << "p_critical " << format_double(report.p_critical) << "\n";
    return 0;
}

struct SearchArgs {
    std::string target;
    int side = 0;
    int timesteps = 0;
    std::string scheme = "basic";
    std::uint64_t budget = 0;  // 0: the whole mask space (small grids only)
    std::uint64_t seed = 0;
    std::string out_dir;
};

int run_search(const SearchArgs& args) {
    TopologyClass target = parse_topology(args.target);
    Scheme scheme = args.scheme == "extended" ? Scheme::Extended : Scheme::Basic;

    std::uint64_t budget = args.budget;
    if (budget == 0) {
        if (args.side > 4)
            throw std::invalid_argument("--budget is required for side lengths above 4 (sampled search)");
        budget = 1ULL << (args.side * args.side);
    }

    std::optional<SearchResult> result = search_pattern(target, args.side, args.timesteps, scheme, budget, args.seed);
    if (!result) {
        std::cerr << "no pattern found for " << args.target << " within budget " << budget << "\n";
        return 1;
    }

    PatternDocument doc;
    doc.config.grid = GridSpec(args.side);
    doc.config.mask = result->mask;
    doc.config.schedule = result->schedule;
    doc.config.total_timesteps = result->T;
    doc.config.edge_probability = 1.0;
    doc.config.rng_seed = args.seed;
    doc.topology = args.target;
    doc.provenance = "search";

    std::string slug;
    for (char ch : args.target) slug += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '-';
    doc.name = slug;

    std::cerr << "matched " << result->matched_component_count << " components, " << result->complete_copies
              << " complete copies\n";
    if (args.out_dir.empty()) {
        std::cout << serialize_pattern(doc);
    } else {
        const std::string path = args.out_dir + "/" + slug + ".pattern";
        write_file(path, serialize_pattern(doc));
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

struct CountArgs {
    std::string input;
    Overrides overrides;
};

int run_count(const CountArgs& args) {
    LoadedDocument loaded = load_document(args.input);
    args.overrides.apply(loaded.doc.config);
    print_count_report(std::cout, count_structures(obtain_trace(loaded)));
    return 0;
}

int run_render(const std::string& input) {
    LoadedDocument loaded = load_document(input);
    std::cout << render_mask(loaded.doc.config.mask);
    return 0;
}

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "Override the RNG seed");
    cmd->add_option("--timesteps", ov.timesteps, "Override the timestep budget (basic schedule only)");
    cmd->add_option("--edge-prob", ov.edge_prob, "Override the edge-formation probability");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collision-grid graph-state toolkit"};
    app.require_subcommand(1);

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a pattern and write trace plus graph export");
    simulate->add_option("pattern", simulate_args.input, "Pattern file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", simulate_args.out_dir, "Output directory")->check(CLI::ExistingDirectory);
    simulate->add_option("--format", simulate_args.format, "Graph export format")
        ->check(CLI::IsMember({"dot", "json", "ascii"}));
    add_override_flags(simulate, simulate_args.overrides);

    ClassifyArgs classify_args;
    CLI::App* classify = app.add_subcommand("classify", "Report the topology of every component");
    classify->add_option("input", classify_args.input, "Pattern or trace file")->required()->check(CLI::ExistingFile);
    add_override_flags(classify, classify_args.overrides);

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "Check stabilizer generators of the built graph states");
    verify->add_option("input", verify_args.input, "Pattern or trace file")->required()->check(CLI::ExistingFile);
    verify->add_option("--component", verify_args.component, "Verify one component by id");
    verify->add_option("--dump-amplitudes", verify_args.dump_path, "Write the state vector to this file");
    add_override_flags(verify, verify_args.overrides);

    CarveArgs carve_args;
    CLI::App* carve = app.add_subcommand("carve", "Z-measure a component down to the kept vertices");
    carve->add_option("input", carve_args.input, "Pattern or trace file")->required()->check(CLI::ExistingFile);
    carve->add_option("--keep", carve_args.keep, "Comma-separated vertex labels, e.g. H.1.2,V.1.3")->required();
    carve->add_option("--out", carve_args.out_dir, "Output directory (default: stdout)")
        ->check(CLI::ExistingDirectory);
    carve->add_option("--format", carve_args.format, "Export format")->check(CLI::IsMember({"dot", "json"}));
    add_override_flags(carve, carve_args.overrides);

    PercolateArgs percolate_args;
    CLI::App* percolate = app.add_subcommand("percolate", "Monte Carlo sweep over edge probabilities (CSV)");
    percolate->add_option("pattern", percolate_args.input, "Pattern file")->required()->check(CLI::ExistingFile);
    percolate->add_option("--p-grid", percolate_args.p_grid, "Comma-separated probabilities");
    percolate->add_option("--trials", percolate_args.trials, "Trials per grid point");
    percolate->add_option("--property", percolate_args.property, "Success property")
        ->check(CLI::IsMember({"complete", "span"}));
    percolate->add_flag("--coupled", percolate_args.coupled, "Share uniform draws across grid points");
    percolate->add_option("--threads", percolate_args.threads, "Worker threads (report is thread-invariant)");
    add_override_flags(percolate, percolate_args.overrides);

    SearchArgs search_args;
    CLI::App* search = app.add_subcommand("search", "Find an active-site mask producing a target topology");
    search->add_option("--target", search_args.target, "Topology spec, e.g. cycle:4 or lattice:2,3")->required();
    search->add_option("--side", search_args.side, "Grid side length")->required();
    search->add_option("--timesteps", search_args.timesteps, "Timestep budget per candidate")->required();
    search->add_option("--scheme", search_args.scheme, "Entry schedule family")
        ->check(CLI::IsMember({"basic", "extended"}));
    search->add_option("--budget", search_args.budget, "Maximum masks to try (default: all, side <= 4)");
    search->add_option("--seed", search_args.seed, "Seed for sampled search on large grids");
    search->add_option("--out", search_args.out_dir, "Directory for the found pattern (default: stdout)")
        ->check(CLI::ExistingDirectory);

    CountArgs count_args;
    CLI::App* count = app.add_subcommand("count", "Structure census of a pattern or trace");
    count->add_option("input", count_args.input, "Pattern or trace file")->required()->check(CLI::ExistingFile);
    add_override_flags(count, count_args.overrides);

    std::string render_input;
    CLI::App* render = app.add_subcommand("render", "ASCII view of the active-site mask");
    render->add_option("input", render_input, "Pattern or trace file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help/--version exit 0, every usage error 2
    }

    try {
        if (simulate->parsed()) return run_simulate(simulate_args);
        if (classify->parsed()) return run_classify(classify_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (carve->parsed()) return run_carve(carve_args);
        if (percolate->parsed()) return run_percolate(percolate_args);
        if (search->parsed()) return run_search(search_args);
        if (count->parsed()) return run_count(count_args);
        if (render->parsed()) return run_render(render_input);
        return 2;  // unreachable: require_subcommand(1)
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
