#include "lacsph/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace lacsph::harness {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_csv(std::ostream& os, const SweepReport& report) {
    os << "# experiment=" << report.experiment << " config_hash=" << report.config_hash
       << " seed=" << report.seed << " version=" << kVersion << "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        os << (i ? "," : "") << report.columns[i];
    os << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
}

void write_json(std::ostream& os, const SweepReport& report) {
    nlohmann::json j = report.summary;
    j["experiment"] = report.experiment;
    j["config_hash"] = report.config_hash;
    j["seed"] = report.seed;
    j["version"] = kVersion;
    j["pass"] = report.pass;
    os << j.dump(2) << "\n";
}

namespace {

std::string double_bits_hex(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

double double_from_bits_hex(const std::string& hex) {
    std::uint64_t bits = std::strtoull(hex.c_str(), nullptr, 16);
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

}  // namespace

FixtureStore::FixtureStore(std::filesystem::path file) : file_(std::move(file)) {
    data_ = nlohmann::json::object();
    std::ifstream in(file_);
    if (in) in >> data_;
}

bool FixtureStore::has(const std::string& name) const { return data_.contains(name); }

double FixtureStore::stored(const std::string& name) const {
    if (!has(name)) throw std::runtime_error("FixtureStore: missing fixture '" + name + "'");
    return double_from_bits_hex(data_.at(name).at("bits").get<std::string>());
}

void FixtureStore::freeze(const std::string& name, double value) {
    data_[name] = {{"bits", double_bits_hex(value)}, {"value", value}};
}

FixtureStore::Check FixtureStore::check(const std::string& name, double value, double tol) const {
    Check c;
    c.stored = stored(name);
    c.delta = std::abs(value - c.stored);
    c.pass = c.delta <= tol;
    return c;
}

FixtureStore::Check FixtureStore::check_or_freeze(const std::string& name, double value, double tol) {
    if (has(name)) return check(name, value, tol);
    freeze(name, value);
    Check c;
    c.pass = true;
    c.stored = value;
    c.delta = 0.0;
    return c;
}

void FixtureStore::save() const {
    if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
    std::ofstream out(file_);
    if (!out) throw std::runtime_error("FixtureStore: cannot write " + file_.string());
    out << data_.dump(2) << "\n";
}

}  // namespace lacsph::harness
