#pragma once

// Exporters: DOT and JSON graph documents, amplitude dumps, percolation CSV,
// the ASCII grid render, and the FNV-1a checksum used by the pattern-library
// manifest. Everything here is deterministic byte-for-byte.

#include <cstdio>
#include <string_view>

#include <json.hpp>

#include "collgrid/analysis.hpp"
#include "collgrid/pattern_io.hpp"
#include "collgrid/stabilizer.hpp"

namespace collgrid {

inline std::string dot_export(const LabeledGraph& g) {
    std::string out = "graph collgrid {\n";
    for (int comp = 0; comp < g.components(); ++comp) {
        out += "  subgraph cluster_" + std::to_string(comp) + " {\n";
        for (int v = 0; v < g.order(); ++v)
            if (g.component_id[static_cast<std::size_t>(v)] == comp)
                out += "    \"" + tag_label(g.vertices[static_cast<std::size_t>(v)]) + "\";\n";
        for (auto [a, b] : g.edges)
            if (g.component_id[static_cast<std::size_t>(a)] == comp)
                out += "    \"" + tag_label(g.vertices[static_cast<std::size_t>(a)]) + "\" -- \"" +
                       tag_label(g.vertices[static_cast<std::size_t>(b)]) + "\";\n";
        out += "  }\n";
    }
    out += "}\n";
    return out;
}

inline std::string json_export(const LabeledGraph& g) {
    nlohmann::ordered_json doc;
    doc["order"] = g.order();
    doc["size"] = g.size();
    doc["components"] = nlohmann::ordered_json::array();
    for (int comp = 0; comp < g.components(); ++comp) {
        nlohmann::ordered_json entry;
        entry["id"] = comp;
        entry["complete"] = g.component_complete[static_cast<std::size_t>(comp)] != 0;
        nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
        for (int v = 0; v < g.order(); ++v)
            if (g.component_id[static_cast<std::size_t>(v)] == comp)
                vertices.push_back(tag_label(g.vertices[static_cast<std::size_t>(v)]));
        entry["order"] = vertices.size();
        entry["vertices"] = std::move(vertices);
        nlohmann::ordered_json edges = nlohmann::ordered_json::array();
        for (auto [a, b] : g.edges)
            if (g.component_id[static_cast<std::size_t>(a)] == comp)
                edges.push_back({tag_label(g.vertices[static_cast<std::size_t>(a)]),
                                 tag_label(g.vertices[static_cast<std::size_t>(b)])});
        entry["edges"] = std::move(edges);
        doc["components"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

// One line per basis state: `bitstring re im`, 17 significant digits, basis
// ascending with qubit 1 leftmost.
inline std::string amplitude_dump(const QuantumRegister& reg) {
    std::string out;
    char buf[80];
    for (std::size_t idx = 0; idx < reg.dim(); ++idx) {
        std::string bits(static_cast<std::size_t>(reg.n), '0');
        for (int q = 1; q <= reg.n; ++q)
            if (reg.bit(idx, q)) bits[static_cast<std::size_t>(q - 1)] = '1';
        // + 0.0 folds IEEE negative zeros so equal states dump equal bytes.
        std::snprintf(buf, sizeof buf, " %.16e %.16e\n", reg.amp[idx].real() + 0.0,
                      reg.amp[idx].imag() + 0.0);
        out += bits;
        out += buf;
    }
    return out;
}

inline std::string percolation_csv(const PercolationReport& report) {
    std::string out = "p,trials,successes,fraction\n";
    for (const PercolationPoint& pt : report.points)
        out += format_double(pt.p) + "," + std::to_string(pt.trials) + "," + std::to_string(pt.successes) +
               "," + format_double(pt.fraction) + "\n";
    return out;
}

// Fixed header plus exactly L rows of L glyphs.
inline std::string render_mask(const ActiveMask& mask) {
    std::string out = "grid " + std::to_string(mask.side) + "x" + std::to_string(mask.side) + " active " +
                      std::to_string(mask.active_count()) + "\n";
    for (int r = 1; r <= mask.side; ++r) {
        for (int c = 1; c <= mask.side; ++c) out += mask.at(r, c) ? '#' : '.';
        out += '\n';
    }
    return out;
}

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        hash ^= ch;
        hash *= 1099511628211ULL;
    }
    return hash;
}

inline std::string fnv1a64_hex(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    return std::string(buf);
}

}  // namespace collgrid
