#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skdv {

/// Plain text table of regression constants, one line per (estimate label, ensemble version):
/// `<id> <ensemble_version> <constant with 12 significant digits>`.  '#' starts a comment.
class ConstantStore {
public:
    struct Entry {
        std::string id;
        std::string ensemble_version;
        double value = 0.0;
    };

    static ConstantStore load(const std::string& path);
    static ConstantStore parse(const std::string& text);
    void save(const std::string& path) const;
    std::string serialize() const;

    std::optional<double> lookup(const std::string& id, const std::string& version) const;
    /// Inserts or replaces.
    void set(const std::string& id, const std::string& version, double value);
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

/// Relative drift budget of a recorded constant.
inline constexpr double kConstantDrift = 1.02;

}  // namespace skdv
