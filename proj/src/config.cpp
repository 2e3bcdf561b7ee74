// config.cpp - JSON <-> ScenarioConfig

#include "qbat/config.hpp"

#include "qbat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qbat {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) {
        throw ValidationError(where.empty() ? "<root>" : where, "expected an object");
    }
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw ValidationError(where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

std::string join(const std::string& where, const char* key) {
    return where.empty() ? std::string(key) : where + "." + key;
}

void read_number(const json& obj, const std::string& where, const char* key, double& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw ValidationError(join(where, key), "expected a number");
    }
    out = v.get<double>();
}

void read_count(const json& obj, const std::string& where, const char* key, std::size_t& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError(join(where, key), "expected a non-negative integer");
    }
    out = v.get<std::size_t>();
}

void read_string(const json& obj, const std::string& where, const char* key, std::string& out) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (!v.is_string()) {
        throw ValidationError(join(where, key), "expected a string");
    }
    out = v.get<std::string>();
}

// Re-throws a ValidationError with its field prefixed by `where`.
template <class F>
void within(const std::string& where, F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        const auto colon = msg.find(": ");
        const std::string detail = colon == std::string::npos ? msg : msg.substr(colon + 2);
        throw ValidationError(join(where, e.field().c_str()), detail);
    }
}

RateProfile parse_rate(const json& obj, const std::string& where) {
    std::string form = "constant";
    if (obj.is_object()) read_string(obj, where, "form", form);
    if (form == "constant") {
        reject_unknown(obj, where, {"form", "gamma"});
        ConstantRate r;
        read_number(obj, where, "gamma", r.gamma);
        return r;
    }
    if (form == "exp_cosine") {
        reject_unknown(obj, where, {"form", "gamma0", "beta", "omega"});
        ExpCosineRate r;
        read_number(obj, where, "gamma0", r.gamma0);
        read_number(obj, where, "beta", r.beta);
        read_number(obj, where, "omega", r.omega);
        return r;
    }
    throw ValidationError(where + ".form", "unknown rate form '" + form + "' (expected constant or exp_cosine)");
}

json rate_to_json(const RateProfile& rate) {
    if (const auto* c = std::get_if<ConstantRate>(&rate)) {
        return {{"form", "constant"}, {"gamma", c->gamma}};
    }
    const auto& e = std::get<ExpCosineRate>(rate);
    return {{"form", "exp_cosine"}, {"gamma0", e.gamma0}, {"beta", e.beta}, {"omega", e.omega}};
}

} // namespace

bool is_filesystem_safe(std::string_view label) {
    if (label.empty() || label == "." || label == "..") return false;
    return std::all_of(label.begin(), label.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
               c == '.';
    });
}

void ScenarioConfig::validate() const {
    within("model", [&] { model.validate(); });
    within("channel.rate", [&] { qbat::validate(channel.rate); });
    within("channel", [&] { channel.validate(); });
    within("integrator", [&] {
        auto without_snapshots = integrator;
        without_snapshots.snapshot_times.clear();
        without_snapshots.validate();
    });
    within("", [&] { integrator.validate(); });
    if (!is_filesystem_safe(label)) {
        throw ValidationError("label", "must be non-empty and use only [A-Za-z0-9._-]");
    }
    if (output_dir.empty()) {
        throw ValidationError("output_dir", "must not be empty");
    }
}

ScenarioConfig config_from_json(const json& doc) {
    ScenarioConfig cfg;
    reject_unknown(doc, "", {"label", "output_dir", "model", "channel", "integrator", "snapshot_times"});
    read_string(doc, "", "label", cfg.label);
    read_string(doc, "", "output_dir", cfg.output_dir);

    if (doc.contains("model")) {
        const auto& m = doc.at("model");
        reject_unknown(m, "model", {"lambda", "alpha", "eta", "n_x", "n_y", "b_s", "tau"});
        read_number(m, "model", "lambda", cfg.model.lambda);
        read_number(m, "model", "alpha", cfg.model.alpha);
        read_number(m, "model", "eta", cfg.model.eta);
        read_number(m, "model", "n_x", cfg.model.n_x);
        read_number(m, "model", "n_y", cfg.model.n_y);
        read_number(m, "model", "b_s", cfg.model.b_s);
        read_number(m, "model", "tau", cfg.model.tau);
    }

    if (doc.contains("channel")) {
        const auto& c = doc.at("channel");
        reject_unknown(c, "channel", {"kind", "rate"});
        std::string kind = "none";
        read_string(c, "channel", "kind", kind);
        try {
            cfg.channel.kind = channel_kind_from_string(kind);
        } catch (const UsageError& e) {
            throw ValidationError("channel.kind", e.what());
        }
        if (c.contains("rate")) {
            cfg.channel.rate = parse_rate(c.at("rate"), "channel.rate");
        } else if (cfg.channel.kind != ChannelKind::None) {
            throw ValidationError("channel.rate", "required for channel kind " + kind);
        }
    }

    if (doc.contains("integrator")) {
        const auto& i = doc.at("integrator");
        reject_unknown(i, "integrator",
                       {"dt", "t_end", "sample_stride", "positivity_tol", "charging_dt", "charging_stride"});
        read_number(i, "integrator", "dt", cfg.integrator.dt);
        read_number(i, "integrator", "t_end", cfg.integrator.t_end);
        read_count(i, "integrator", "sample_stride", cfg.integrator.sample_stride);
        read_number(i, "integrator", "positivity_tol", cfg.integrator.positivity_tol);
        read_number(i, "integrator", "charging_dt", cfg.integrator.charging_dt);
        read_count(i, "integrator", "charging_stride", cfg.integrator.charging_stride);
    }

    if (doc.contains("snapshot_times")) {
        const auto& s = doc.at("snapshot_times");
        if (!s.is_array()) {
            throw ValidationError("snapshot_times", "expected an array of numbers");
        }
        for (const auto& v : s) {
            if (!v.is_number()) {
                throw ValidationError("snapshot_times", "expected an array of numbers");
            }
            cfg.integrator.snapshot_times.push_back(v.get<double>());
        }
    }

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(std::string_view document) {
    if (std::all_of(document.begin(), document.end(), [](unsigned char c) { return std::isspace(c); })) {
        return config_from_json(json::object());
    }
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(document, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("config parse error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + e.what(),
                         line, col);
    }
    return config_from_json(doc);
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config(buf.str());
}

json config_to_json(const ScenarioConfig& cfg) {
    const auto& m = cfg.model;
    const auto& i = cfg.integrator;
    json channel = {{"kind", to_string(cfg.channel.kind)}, {"rate", rate_to_json(cfg.channel.rate)}};
    return {
        {"label", cfg.label},
        {"output_dir", cfg.output_dir},
        {"model",
         {{"lambda", m.lambda}, {"alpha", m.alpha}, {"eta", m.eta}, {"n_x", m.n_x}, {"n_y", m.n_y},
          {"b_s", m.b_s}, {"tau", m.tau}}},
        {"channel", channel},
        {"integrator",
         {{"dt", i.dt}, {"t_end", i.t_end}, {"sample_stride", i.sample_stride}, {"positivity_tol", i.positivity_tol},
          {"charging_dt", i.charging_dt}, {"charging_stride", i.charging_stride}}},
        {"snapshot_times", i.snapshot_times},
    };
}

ScenarioConfig with_field(const ScenarioConfig& cfg, const std::string& path, double value) {
    json doc = config_to_json(cfg);
    json* node = &doc;
    std::stringstream parts(path);
    std::string part;
    while (std::getline(parts, part, '.')) {
        if (!node->is_object() || !node->contains(part)) {
            throw UsageError("unknown axis path '" + path + "'");
        }
        node = &node->at(part);
    }
    if (path.empty() || !node->is_number()) {
        throw UsageError("axis path '" + path + "' does not name a numeric field");
    }
    if (node->is_number_integer()) {
        if (value < 0.0 || value != std::floor(value)) {
            throw UsageError("axis path '" + path + "' requires non-negative integer values");
        }
        *node = static_cast<std::size_t>(value);
    } else {
        *node = value;
    }
    return config_from_json(doc);
}

} // namespace qbat
