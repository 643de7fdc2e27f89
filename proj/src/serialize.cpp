#include "cavityforge/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cavityforge::io {

namespace {

TimeGrid parse_grid_header(const std::string& line, const char* who) {
    // "# t_start=<v> dt=<v> n=<v>"
    double t_start = 0, dt = 0;
    unsigned long long n = 0;
    if (std::sscanf(line.c_str(), "# t_start=%lf dt=%lf n=%llu", &t_start, &dt, &n) != 3)
        throw InvalidParameterError(std::string(who) + ": missing grid header line");
    TimeGrid g;
    g.t_start = t_start;
    g.dt = dt;
    g.n = static_cast<std::size_t>(n);
    if (g.n < 2 || !(g.dt > 0.0))
        throw InvalidParameterError(std::string(who) + ": invalid grid header");
    return g;
}

std::ifstream open_input(const std::filesystem::path& path, const char* who) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError(std::string(who) + ": cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path, const char* who) {
    std::ofstream out(path);
    if (!out) throw InvalidParameterError(std::string(who) + ": cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_waveform_csv(const std::filesystem::path& path, const PhotonWaveform& w) {
    auto out = open_output(path, "write_waveform_csv");
    out << "# t_start=" << format_double(w.grid.t_start) << " dt=" << format_double(w.grid.dt)
        << " n=" << w.grid.n << "\n";
    out << "t,re,im\n";
    for (std::size_t i = 0; i < w.grid.n; ++i)
        out << format_double(w.grid.t(i)) << ',' << format_double(w.amp[i].real()) << ','
            << format_double(w.amp[i].imag()) << "\n";
}

PhotonWaveform read_waveform_csv(const std::filesystem::path& path) {
    auto in = open_input(path, "read_waveform_csv");
    std::string line;
    if (!std::getline(in, line))
        throw InvalidParameterError("read_waveform_csv: empty file " + path.string());
    PhotonWaveform w;
    w.grid = parse_grid_header(line, "read_waveform_csv");
    std::getline(in, line);  // column header
    w.amp.reserve(w.grid.n);
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double t, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
            throw InvalidParameterError("read_waveform_csv: malformed row at line " +
                                        std::to_string(line_no));
        w.amp.emplace_back(re, im);
    }
    if (w.amp.size() != w.grid.n)
        throw InvalidParameterError("read_waveform_csv: sample count disagrees with header");
    return w;
}

nlohmann::json waveform_to_json(const PhotonWaveform& w) {
    nlohmann::json j;
    j["grid"] = {{"t_start", w.grid.t_start}, {"dt", w.grid.dt}, {"n", w.grid.n}};
    auto& re = j["re"] = nlohmann::json::array();
    auto& im = j["im"] = nlohmann::json::array();
    for (const auto& a : w.amp) {
        re.push_back(a.real());
        im.push_back(a.imag());
    }
    return j;
}

PhotonWaveform waveform_from_json(const nlohmann::json& j) {
    PhotonWaveform w;
    w.grid.t_start = j.at("grid").at("t_start").get<double>();
    w.grid.dt = j.at("grid").at("dt").get<double>();
    w.grid.n = j.at("grid").at("n").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != w.grid.n || im.size() != w.grid.n)
        throw InvalidParameterError("waveform_from_json: sample count disagrees with grid");
    w.amp.reserve(w.grid.n);
    for (std::size_t i = 0; i < w.grid.n; ++i)
        w.amp.emplace_back(re[i].get<double>(), im[i].get<double>());
    return w;
}

void write_pulse_csv(const std::filesystem::path& path, const PulseEnvelope& p) {
    auto out = open_output(path, "write_pulse_csv");
    out << "# t_start=" << format_double(p.grid.t_start) << " dt=" << format_double(p.grid.dt)
        << " n=" << p.grid.n << "\n";
    out << "t,omega\n";
    for (std::size_t i = 0; i < p.grid.n; ++i)
        out << format_double(p.grid.t(i)) << ',' << format_double(p.omega[i]) << "\n";
}

PulseEnvelope read_pulse_csv(const std::filesystem::path& path) {
    auto in = open_input(path, "read_pulse_csv");
    std::string line;
    if (!std::getline(in, line))
        throw InvalidParameterError("read_pulse_csv: empty file " + path.string());
    PulseEnvelope p;
    p.grid = parse_grid_header(line, "read_pulse_csv");
    std::getline(in, line);
    p.omega.reserve(p.grid.n);
    std::size_t line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double t, om;
        if (std::sscanf(line.c_str(), "%lf,%lf", &t, &om) != 2)
            throw InvalidParameterError("read_pulse_csv: malformed row at line " +
                                        std::to_string(line_no));
        p.omega.push_back(om);
    }
    if (p.omega.size() != p.grid.n)
        throw InvalidParameterError("read_pulse_csv: sample count disagrees with header");
    return p;
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
    auto out = open_output(path, "write_table_csv");
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << columns[c] << (c + 1 < columns.size() ? ',' : '\n');
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw InvalidParameterError("write_table_csv: row width disagrees with header");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_double(row[c]) << (c + 1 < row.size() ? ',' : '\n');
    }
}

}  // namespace cavityforge::io
