#ifndef AEROKIN_CSV_HPP
#define AEROKIN_CSV_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace aerokin {

/// 17 significant digits: enough to round-trip any 64-bit float.
inline std::string csv_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

/// Minimal CSV writer; fields are joined with commas, no quoting (callers
/// only emit numbers and plain identifiers).
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open '" + path + "'");
    }

    void header(const std::vector<std::string>& names) { row_strings(names); }

    void row_strings(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

    template <class... Ts>
    void row(Ts... vals) {
        bool first = true;
        auto emit = [&](auto v) {
            if (!first) out_ << ',';
            first = false;
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                out_ << csv_double(v);
            else
                out_ << v;
        };
        (emit(vals), ...);
        out_ << '\n';
    }

    void flush() { out_.flush(); }

  private:
    std::ofstream out_;
};

}  // namespace aerokin

#endif
