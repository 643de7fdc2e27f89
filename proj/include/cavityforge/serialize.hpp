#pragma once
// CSV and JSON serialization for waveforms and pulses.  Numeric text uses 17
// significant digits, so write/read round-trips are bit-exact; the CSV header
// comment carries the grid so no sample arithmetic is needed on load.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavityforge/qcore.hpp"

namespace cavityforge::io {

// shortest text that parses back to exactly the same double (<= 17 digits)
std::string format_double(double v);

void write_waveform_csv(const std::filesystem::path& path, const PhotonWaveform& w);
PhotonWaveform read_waveform_csv(const std::filesystem::path& path);

nlohmann::json waveform_to_json(const PhotonWaveform& w);
PhotonWaveform waveform_from_json(const nlohmann::json& j);

void write_pulse_csv(const std::filesystem::path& path, const PulseEnvelope& p);
PulseEnvelope read_pulse_csv(const std::filesystem::path& path);

// generic numeric table, one row per sample
void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows);

}  // namespace cavityforge::io
