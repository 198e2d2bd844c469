#include "phasemc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

namespace phasemc {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const Entry& e, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(e.line, "malformed number for '" + key + "': " + e.value);
    }
}

std::uint64_t parse_u64(const Entry& e, const std::string& key) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        fail(e.line, "malformed integer for '" + key + "': " + e.value);
    return v;
}

std::vector<double> parse_list(const Entry& e, const std::string& key) {
    std::string body = e.value;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(e.line, "malformed number in list '" + key + "': " + tok);
        }
    }
    if (out.empty()) fail(e.line, "empty list for '" + key + "'");
    return out;
}

} // namespace

ScenarioConfig default_config(ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.kind = kind;
    switch (kind) {
        case ScenarioKind::single_packet:
            cfg.particles = 1'000'000;
            cfg.x_min = -10.0;
            cfg.x_max = 90.0;
            break;
        case ScenarioKind::two_packets:
            cfg.particles = 2'000'000;
            cfg.x_min = -60.0;
            cfg.x_max = 60.0;
            break;
        case ScenarioKind::wall:
            cfg.particles = 1'000'000;
            cfg.x0 = -20.0;
            cfg.x_min = -80.0;
            cfg.x_max = 0.0;
            break;
        case ScenarioKind::double_slit:
            cfg.particles = 1'000'000;
            cfg.snapshot_times.clear();
            break;
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const std::string s = trim(raw);
            if (s.empty()) continue;
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected 'key = value', got: " + s);
            const std::string key = trim(s.substr(0, eq));
            const std::string value = trim(s.substr(eq + 1));
            if (key.empty()) fail(line, "missing key before '='");
            if (value.empty()) fail(line, "missing value for '" + key + "'");
            if (entries.count(key)) fail(line, "duplicate key '" + key + "'");
            entries[key] = Entry{value, line, false};
        }
    }

    auto it = entries.find("kind");
    if (it == entries.end()) throw ConfigError("line 0: missing required key 'kind'");
    it->second.used = true;
    ScenarioKind kind;
    if (it->second.value == "single_packet") kind = ScenarioKind::single_packet;
    else if (it->second.value == "two_packets") kind = ScenarioKind::two_packets;
    else if (it->second.value == "wall") kind = ScenarioKind::wall;
    else if (it->second.value == "double_slit") kind = ScenarioKind::double_slit;
    else fail(it->second.line, "unknown scenario kind '" + it->second.value + "'");

    ScenarioConfig cfg = default_config(kind);

    const auto take = [&](const char* key) -> Entry* {
        auto e = entries.find(key);
        if (e == entries.end()) return nullptr;
        e->second.used = true;
        return &e->second;
    };
    const auto get_d = [&](const char* key, double& dst) {
        if (Entry* e = take(key)) dst = parse_double(*e, key);
    };
    const auto get_u = [&](const char* key, std::uint64_t& dst) {
        if (Entry* e = take(key)) dst = parse_u64(*e, key);
    };

    get_u("particles", cfg.particles);
    get_u("seed", cfg.seed);
    if (Entry* e = take("threads")) {
        const auto v = parse_u64(*e, "threads");
        if (v > 1024) fail(e->line, "'threads' is unreasonably large");
        cfg.threads = static_cast<int>(v);
    }
    get_d("phi0", cfg.phi0);

    const bool massive = kind != ScenarioKind::double_slit;
    if (massive) {
        if (Entry* e = take("snapshots")) cfg.snapshot_times = parse_list(*e, "snapshots");
        get_d("x_min", cfg.x_min);
        get_d("x_max", cfg.x_max);
        get_d("bin_width", cfg.bin_width);
        get_d("v0", cfg.v0);
        get_d("sigma_v", cfg.sigma_v);
    }
    switch (kind) {
        case ScenarioKind::single_packet:
            get_d("x0", cfg.x0);
            break;
        case ScenarioKind::two_packets:
            get_d("x1", cfg.x1);
            get_d("x2", cfg.x2);
            break;
        case ScenarioKind::wall:
            get_d("x0", cfg.x0);
            get_d("wall_x", cfg.wall_x);
            break;
        case ScenarioKind::double_slit:
            get_d("wavelength", cfg.photon.wavelength);
            get_d("slit_separation", cfg.photon.slit_separation);
            get_d("screen_distance", cfg.photon.screen_distance);
            get_d("pixel_width", cfg.pixel_width);
            get_d("segment_width", cfg.segment_width);
            if (Entry* e = take("segments")) {
                const auto v = parse_u64(*e, "segments");
                if (v < 1 || v > 1'000'000) fail(e->line, "'segments' out of range");
                cfg.segments = static_cast<int>(v);
            }
            get_d("half_angle", cfg.emission_half_angle);
            get_d("min_screen_slit_ratio", cfg.min_screen_slit_ratio);
            break;
    }

    for (const auto& [key, e] : entries)
        if (!e.used) fail(e.line, "unknown key '" + key + "' for scenario kind " + to_string(kind));

    // value validation, anchored to the defining line where there is one
    const auto line_of = [&](const char* key) {
        auto e = entries.find(key);
        return e == entries.end() ? 0 : e->second.line;
    };
    if (cfg.particles < 1) fail(line_of("particles"), "'particles' must be >= 1");
    if (massive) {
        if (!(cfg.bin_width > 0.0)) fail(line_of("bin_width"), "'bin_width' must be > 0");
        if (!(cfg.x_max > cfg.x_min)) fail(line_of("x_max"), "'x_max' must exceed 'x_min'");
        if (!(cfg.sigma_v >= 0.0)) fail(line_of("sigma_v"), "'sigma_v' must be >= 0");
        if (cfg.snapshot_times.empty()) fail(line_of("snapshots"), "'snapshots' must be non-empty");
        for (const double t : cfg.snapshot_times)
            if (!(t > 0.0)) fail(line_of("snapshots"), "'snapshots' entries must be > 0");
    }
    if (kind == ScenarioKind::wall && !(cfg.x0 < cfg.wall_x))
        fail(line_of("x0"), "'x0' must lie below the wall");
    if (kind == ScenarioKind::double_slit) {
        if (!(cfg.photon.wavelength > 0.0)) fail(line_of("wavelength"), "'wavelength' must be > 0");
        if (!(cfg.pixel_width > 0.0)) fail(line_of("pixel_width"), "'pixel_width' must be > 0");
        if (!(cfg.photon.slit_separation > 0.0))
            fail(line_of("slit_separation"), "'slit_separation' must be > 0");
        if (!(cfg.emission_half_angle > 0.0)) fail(line_of("half_angle"), "'half_angle' must be > 0");
        const double ratio = cfg.photon.screen_distance / cfg.photon.slit_separation;
        if (ratio < cfg.min_screen_slit_ratio)
            fail(line_of("screen_distance"),
                 "'screen_distance'/'slit_separation' must be >= " +
                     std::to_string(cfg.min_screen_slit_ratio));
    }
    return cfg;
}

std::string emit_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "kind = " << to_string(cfg.kind) << "\n";
    out << "particles = " << cfg.particles << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "phi0 = " << cfg.phi0 << "\n";
    if (cfg.kind != ScenarioKind::double_slit) {
        out << "snapshots =";
        for (const double t : cfg.snapshot_times) out << ' ' << t;
        out << "\n";
        out << "x_min = " << cfg.x_min << "\n";
        out << "x_max = " << cfg.x_max << "\n";
        out << "bin_width = " << cfg.bin_width << "\n";
        out << "v0 = " << cfg.v0 << "\n";
        out << "sigma_v = " << cfg.sigma_v << "\n";
    }
    switch (cfg.kind) {
        case ScenarioKind::single_packet:
            out << "x0 = " << cfg.x0 << "\n";
            break;
        case ScenarioKind::two_packets:
            out << "x1 = " << cfg.x1 << "\n";
            out << "x2 = " << cfg.x2 << "\n";
            break;
        case ScenarioKind::wall:
            out << "x0 = " << cfg.x0 << "\n";
            out << "wall_x = " << cfg.wall_x << "\n";
            break;
        case ScenarioKind::double_slit:
            out << "wavelength = " << cfg.photon.wavelength << "\n";
            out << "slit_separation = " << cfg.photon.slit_separation << "\n";
            out << "screen_distance = " << cfg.photon.screen_distance << "\n";
            out << "pixel_width = " << cfg.pixel_width << "\n";
            out << "segment_width = " << cfg.segment_width << "\n";
            out << "segments = " << cfg.segments << "\n";
            out << "half_angle = " << cfg.emission_half_angle << "\n";
            out << "min_screen_slit_ratio = " << cfg.min_screen_slit_ratio << "\n";
            break;
    }
    return out.str();
}

} // namespace phasemc
