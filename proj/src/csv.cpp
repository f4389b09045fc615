#include "vep/csv.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace vep {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

// days since 1970-01-01 for a proleptic Gregorian civil date
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool parse_timestamp(std::string_view s, TimePoint& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (parse_int(s, out)) return true;
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.remove_suffix(1);
    // YYYY-MM-DD[T ]HH:MM:SS
    int y, mo, d, h, mi, se;
    char sep;
    if (std::sscanf(std::string(s).c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep, &h, &mi,
                    &se) != 7)
        return false;
    if (sep != 'T' && sep != ' ') return false;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
        se < 0 || se > 60)
        return false;
    out = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
          h * 3600 + mi * 60 + se;
    return true;
}

}  // namespace

NetworkDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto header = split_fields(line);
    if (header.size() < 2 || trim(header[0]) != "timestamp")
        throw DataError("bad header, expected `timestamp,bus_1,...`: " + line);

    NetworkDataset dataset;
    std::vector<std::string> column_names;
    for (std::size_t c = 1; c < header.size(); ++c) {
        auto name = trim(header[c]);
        std::int64_t id = 0;
        if (name.substr(0, 4) != "bus_" || !parse_int(name.substr(4), id) || id <= 0)
            throw DataError("bad header column `" + std::string(name) +
                            "`, expected bus_<id>");
        dataset.buses.push_back(VoltageSeries{static_cast<int>(id), {}, {}});
        column_names.emplace_back(name);
    }

    std::size_t row = 0;  // 1-based data row index
    TimePoint prev = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++row;
        auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw DataError("malformed row " + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " fields, got " +
                            std::to_string(fields.size()));

        TimePoint t;
        if (!parse_timestamp(fields[0], t))
            throw DataError("malformed row " + std::to_string(row) + ": bad timestamp `" +
                            std::string(trim(fields[0])) + "`");
        if (row > 1 && t <= prev)
            throw DataError("non-increasing timestamps at row " + std::to_string(row));
        prev = t;

        for (std::size_t c = 0; c < dataset.buses.size(); ++c) {
            auto field = trim(fields[c + 1]);
            double v = 0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (ec != std::errc() || ptr != field.data() + field.size())
                throw DataError("malformed row " + std::to_string(row) + ", column " +
                                column_names[c] + ": `" + std::string(field) + "`");
            if (!std::isfinite(v))
                throw DataError("non-finite value at row " + std::to_string(row) +
                                ", column " + column_names[c]);
            dataset.buses[c].timestamps.push_back(t);
            dataset.buses[c].values.push_back(v);
        }
    }
    if (row == 0) throw DataError("no data rows in " + path.string());
    validate(dataset);
    return dataset;
}

void save_csv(const NetworkDataset& dataset, const std::filesystem::path& path) {
    validate(dataset);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());

    out << "timestamp";
    for (const auto& bus : dataset.buses) out << ",bus_" << bus.bus_id;
    out << '\n';

    std::array<char, 32> buf;
    const std::size_t n = dataset.sample_count();
    for (std::size_t i = 0; i < n; ++i) {
        out << dataset.buses.front().timestamps[i];
        for (const auto& bus : dataset.buses) {
            auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), bus.values[i]);
            out << ',' << std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data()));
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace vep
