#pragma once

// Pattern and trace documents. Text-first, canonical field order, byte-exact
// round trips: serialize(parse(text)) == text for every file this library
// writes. Parse failures carry 1-based line numbers.

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "collgrid/errors.hpp"
#include "collgrid/stream.hpp"

namespace collgrid {

struct PatternDocument {
    SimulationConfig config;
    // Optional metadata; empty string means absent.
    std::string name;
    std::string topology;
    std::string provenance;
};

// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string serialize_pattern(const PatternDocument& doc) {
    const SimulationConfig& cfg = doc.config;
    const int L = cfg.grid.side_length;
    std::string out;
    auto field = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += ' ';
        out += value;
        out += '\n';
    };
    if (!doc.name.empty()) field("name", doc.name);
    if (!doc.topology.empty()) field("topology", doc.topology);
    if (!doc.provenance.empty()) field("provenance", doc.provenance);
    field("side_length", std::to_string(L));
    field("timesteps", std::to_string(cfg.total_timesteps));
    field("edge_probability", format_double(cfg.edge_probability));
    field("seed", std::to_string(cfg.rng_seed));
    if (is_basic_schedule(cfg.schedule) && cfg.schedule.generations() == cfg.total_timesteps) {
        field("schedule", "basic " + std::to_string(cfg.total_timesteps));
    } else {
        field("schedule", "explicit");
        auto lane_line = [&](char axis, int lane, const std::vector<Directive>& dirs) {
            std::string text;
            for (Directive d : dirs) text += directive_char(d);
            field(std::string(1, axis) + " " + std::to_string(lane), text);
        };
        for (int lane = 1; lane <= L; ++lane)
            lane_line('h', lane, cfg.schedule.horizontal[static_cast<std::size_t>(lane - 1)]);
        for (int lane = 1; lane <= L; ++lane)
            lane_line('v', lane, cfg.schedule.vertical[static_cast<std::size_t>(lane - 1)]);
    }
    out += "mask\n";
    for (int r = 1; r <= L; ++r) {
        for (int c = 1; c <= L; ++c) out += cfg.mask.at(r, c) ? '#' : '.';
        out += '\n';
    }
    return out;
}

namespace detail {

struct LineCursor {
    std::vector<std::string> lines;
    std::size_t next = 0;

    explicit LineCursor(std::string_view text) {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    int line_no() const { return static_cast<int>(next); }  // number of the line just taken
    bool done() const { return next >= lines.size(); }
    const std::string& take(const char* expected) {
        if (done()) throw parse_error(static_cast<int>(lines.size()) + 1,
                                      std::string("unexpected end of document, expected ") + expected);
        return lines[next++];
    }
    const std::string* peek() const { return done() ? nullptr : &lines[next]; }
};

inline std::pair<std::string, std::string> split_key(const std::string& line) {
    auto space = line.find(' ');
    if (space == std::string::npos) return {line, ""};
    return {line.substr(0, space), line.substr(space + 1)};
}

inline long long parse_int(const std::string& text, int line_no, const char* what,
                           long long lo, long long hi) {
    long long value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw parse_error(line_no, std::string("malformed ") + what + " '" + text + "'");
    if (value < lo || value > hi)
        throw parse_error(line_no, std::string(what) + " " + text + " outside allowed range");
    return value;
}

// Header shared by pattern files and trace logs; leaves the cursor just past
// the mask block.
inline PatternDocument parse_pattern_header(LineCursor& cursor) {
    PatternDocument doc;
    // Optional metadata, in canonical order.
    for (const char* key : {"name", "topology", "provenance"}) {
        const std::string* line = cursor.peek();
        if (!line) break;
        auto [k, v] = split_key(*line);
        if (k != key) continue;
        if (v.empty()) throw parse_error(cursor.line_no() + 1, std::string(key) + " value is empty");
        ++cursor.next;
        if (k == "name") doc.name = v;
        else if (k == "topology") doc.topology = v;
        else doc.provenance = v;
    }

    auto expect_field = [&cursor](const char* key) {
        const std::string& line = cursor.take(key);
        auto [k, v] = split_key(line);
        if (k != std::string(key))
            throw parse_error(cursor.line_no(), "expected '" + std::string(key) + "', found '" + k + "'");
        return v;
    };

    SimulationConfig& cfg = doc.config;
    const int L = static_cast<int>(parse_int(expect_field("side_length"), cursor.line_no(), "side_length", 1, 1024));
    cfg.grid = GridSpec(L);
    cfg.total_timesteps =
        static_cast<int>(parse_int(expect_field("timesteps"), cursor.line_no(), "timesteps", 1, 1 << 20));

    {
        std::string text = expect_field("edge_probability");
        double p = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), p);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw parse_error(cursor.line_no(), "malformed edge_probability '" + text + "'");
        if (!(p >= 0.0 && p <= 1.0))
            throw parse_error(cursor.line_no(), "edge_probability " + text + " outside [0,1]");
        cfg.edge_probability = p;
    }
    {
        std::string text = expect_field("seed");
        std::uint64_t seed = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw parse_error(cursor.line_no(), "malformed seed '" + text + "'");
        cfg.rng_seed = seed;
    }

    const std::string schedule_value = expect_field("schedule");
    if (schedule_value.rfind("basic", 0) == 0) {
        auto [word, t_text] = split_key(schedule_value);
        long long t = parse_int(t_text, cursor.line_no(), "schedule generation count", 1, 1 << 20);
        if (t != cfg.total_timesteps)
            throw parse_error(cursor.line_no(), "basic schedule length differs from timesteps");
        cfg.schedule = make_basic_schedule(cfg.grid, cfg.total_timesteps);
    } else if (schedule_value == "explicit") {
        cfg.schedule.horizontal.resize(static_cast<std::size_t>(L));
        cfg.schedule.vertical.resize(static_cast<std::size_t>(L));
        for (char axis : {'h', 'v'}) {
            for (int lane = 1; lane <= L; ++lane) {
                const std::string& line = cursor.take("schedule lane line");
                auto [k, v] = split_key(line);
                auto [lane_text, dirs] = split_key(v);
                if (k != std::string(1, axis) ||
                    parse_int(lane_text, cursor.line_no(), "lane", 1, L) != lane)
                    throw parse_error(cursor.line_no(), std::string("expected lane line '") + axis + " " +
                                                            std::to_string(lane) + " ...'");
                if (static_cast<int>(dirs.size()) != cfg.total_timesteps)
                    throw parse_error(cursor.line_no(), "directive list length differs from timesteps");
                std::vector<Directive>& out =
                    (axis == 'h' ? cfg.schedule.horizontal : cfg.schedule.vertical)[static_cast<std::size_t>(lane - 1)];
                for (char ch : dirs) {
                    switch (ch) {
                    case 'F': out.push_back(Directive::Forward); break;
                    case 'B': out.push_back(Directive::Backward); break;
                    case 'S': out.push_back(Directive::Skip); break;
                    default:
                        throw parse_error(cursor.line_no(),
                                          std::string("unknown directive '") + ch + "' (want F, B or S)");
                    }
                }
            }
        }
    } else {
        throw parse_error(cursor.line_no(), "unknown schedule kind '" + schedule_value + "'");
    }

    if (cursor.take("mask") != "mask") throw parse_error(cursor.line_no(), "expected 'mask'");
    cfg.mask = ActiveMask(L);
    for (int r = 1; r <= L; ++r) {
        const std::string& row = cursor.take("mask row");
        if (static_cast<int>(row.size()) != L)
            throw parse_error(cursor.line_no(), "mask row has length " + std::to_string(row.size()) +
                                                    ", side_length is " + std::to_string(L));
        for (int c = 1; c <= L; ++c) {
            char ch = row[static_cast<std::size_t>(c - 1)];
            if (ch != '#' && ch != '.')
                throw parse_error(cursor.line_no(), std::string("mask cell '") + ch + "' (want # or .)");
            cfg.mask.set(r, c, ch == '#');
        }
    }
    doc.config.validate();
    return doc;
}

}  // namespace detail

inline PatternDocument parse_pattern(std::string_view text) {
    detail::LineCursor cursor(text);
    PatternDocument doc = detail::parse_pattern_header(cursor);
    while (!cursor.done()) {
        if (!cursor.take("end of document").empty())
            throw parse_error(cursor.line_no(), "trailing content after mask block");
    }
    return doc;
}

// Trace log: the pattern header followed by `events N` and one line per
// event, `t r c axis1 lane1 g1 axis2 lane2 g2 formed`, in trace order.
inline std::string serialize_trace(const PatternDocument& doc, const RunTrace& trace) {
    std::string out = serialize_pattern(doc);
    out += "events " + std::to_string(trace.events.size()) + "\n";
    auto endpoint = [](const VertexTag& v) {
        return std::string(v.axis == Axis::H ? "H " : "V ") + std::to_string(v.lane) + " " +
               std::to_string(v.generation);
    };
    for (const EdgeEvent& ev : trace.events) {
        out += std::to_string(ev.timestep) + " " + std::to_string(ev.row) + " " + std::to_string(ev.col) +
               " " + endpoint(ev.a) + " " + endpoint(ev.b) + " " + (ev.formed ? "1" : "0") + "\n";
    }
    return out;
}

inline std::pair<PatternDocument, RunTrace> parse_trace(std::string_view text) {
    detail::LineCursor cursor(text);
    PatternDocument doc = detail::parse_pattern_header(cursor);

    RunTrace trace;
    trace.config = doc.config;
    trace.roster = scheduled_roster(doc.config);
    const int L = doc.config.grid.side_length;
    for (const VertexTag& v : trace.roster)
        if (v.generation + L - 1 <= doc.config.total_timesteps) trace.complete.push_back(v);

    auto [events_key, count_text] = detail::split_key(cursor.take("events"));
    if (events_key != "events") throw parse_error(cursor.line_no(), "expected 'events', found '" + events_key + "'");
    const long long count = detail::parse_int(count_text, cursor.line_no(), "event count", 0, 1LL << 32);

    auto find_tag = [&](char axis_ch, int lane, int g, int line_no) {
        Axis axis = axis_ch == 'H' ? Axis::H : Axis::V;
        Directive d = doc.config.schedule.directive(axis == Axis::H, lane, g);
        if (d == Directive::Skip)
            throw parse_error(line_no, "event references unscheduled vertex " +
                                           std::string(1, axis_ch) + "." + std::to_string(lane) + "." +
                                           std::to_string(g));
        return VertexTag{axis, lane, g, d};
    };
    for (long long i = 0; i < count; ++i) {
        const std::string& line = cursor.take("event line");
        int t = 0, r = 0, c = 0, lane1 = 0, g1 = 0, lane2 = 0, g2 = 0, formed = 0;
        char axis1 = 0, axis2 = 0;
        int fields = std::sscanf(line.c_str(), "%d %d %d %c %d %d %c %d %d %d", &t, &r, &c, &axis1,
                                 &lane1, &g1, &axis2, &lane2, &g2, &formed);
        if (fields != 10 || (axis1 != 'H' && axis1 != 'V') || (axis2 != 'H' && axis2 != 'V') ||
            (formed != 0 && formed != 1))
            throw parse_error(cursor.line_no(), "malformed event line '" + line + "'");
        trace.events.emplace_back(find_tag(axis1, lane1, g1, cursor.line_no()),
                                  find_tag(axis2, lane2, g2, cursor.line_no()), r, c, t, formed == 1);
    }
    while (!cursor.done()) {
        if (!cursor.take("end of document").empty())
            throw parse_error(cursor.line_no(), "trailing content after event list");
    }
    return {doc, trace};
}

// Trace logs are the only documents containing an `events` line.
inline bool looks_like_trace(std::string_view text) {
    return text.find("\nevents ") != std::string_view::npos;
}

}  // namespace collgrid
