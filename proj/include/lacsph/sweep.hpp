#pragma once

// Report plumbing: CSV row tables with provenance, JSON fit summaries, the
// FNV config hash and the bit-exact fixture store.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace lacsph::harness {

inline constexpr const char* kVersion = "0.1.0";

struct SweepReport {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // emitted in deterministic parameter order
    nlohmann::json summary;                      // fit results, checks, metadata
    std::string config_hash = "0";
    std::uint64_t seed = 0;
    bool pass = true;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// %.17g, round-trip exact
std::string format_double(double v);

std::string fnv1a_hex(const std::string& data);

// CSV: provenance comment lines, then header, then rows.
void write_csv(std::ostream& os, const SweepReport& report);

// JSON: summary plus provenance.
void write_json(std::ostream& os, const SweepReport& report);

// One file per fixture set.  Values are stored both as decimal text and as
// the hex bit pattern of the double; the bit pattern is authoritative, so a
// freeze/load cycle round-trips exactly.
class FixtureStore {
  public:
    explicit FixtureStore(std::filesystem::path file);

    bool has(const std::string& name) const;
    double stored(const std::string& name) const;  // throws when missing
    void freeze(const std::string& name, double value);

    struct Check {
        bool pass = false;
        double stored = 0.0;
        double delta = 0.0;
    };
    // Compares within tol; throws when the fixture is missing.
    Check check(const std::string& name, double value, double tol) const;

    // check when present, freeze otherwise; returns the comparison result
    Check check_or_freeze(const std::string& name, double value, double tol);

    void save() const;
    const std::filesystem::path& path() const { return file_; }

  private:
    std::filesystem::path file_;
    nlohmann::json data_;
};

}  // namespace lacsph::harness
