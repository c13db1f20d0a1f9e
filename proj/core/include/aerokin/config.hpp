#ifndef AEROKIN_CONFIG_HPP
#define AEROKIN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace aerokin {

/// Sections of key = value lines.  '#' and ';' start comments; keys are
/// unique per section; values keep inner whitespace trimmed at the ends.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    /// Throws std::invalid_argument naming the offending key when missing or
    /// malformed.
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double_or(const std::string& section, const std::string& key,
                         double fallback) const;
    long get_int(const std::string& section, const std::string& key) const;
    long get_int_or(const std::string& section, const std::string& key, long fallback) const;
    std::uint64_t get_u64_or(const std::string& section, const std::string& key,
                             std::uint64_t fallback) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }
    std::vector<std::string> section_names_with_prefix(const std::string& prefix) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace aerokin

#endif
