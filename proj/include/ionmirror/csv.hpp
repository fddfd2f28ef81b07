#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "ionmirror/analysis.hpp"
#include "ionmirror/cli_config.hpp"
#include "ionmirror/experiment.hpp"

namespace ionmirror {

// 17 significant digits round-trip any double exactly; to_chars keeps the
// output independent of the global locale.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("parse_double: bad field '" + s + "'");
    return v;
}

inline std::string csv_header_line() {
    return "distance_nm,mean_photon_count,std_error,mean_population,runs,steps";
}

inline std::string format_row(const DistanceSample& row) {
    std::string out;
    out += format_double(row.distance_nm);
    out += ',';
    out += format_double(row.mean_photon_count);
    out += ',';
    out += format_double(row.std_error);
    out += ',';
    out += format_double(row.mean_population);
    out += ',';
    out += std::to_string(row.runs);
    out += ',';
    out += std::to_string(row.steps);
    return out;
}

// Serializes a sweep, the fringe fit, and the full configuration that
// produced it.  Data rows come first; everything after a '#' is commentary
// for humans and for reproducing the run.  LF line endings, always.
inline std::string render_csv(const SweepResult& result, const FitResult& fit,
                              const CliConfig& cli) {
    std::string out = csv_header_line();
    out += '\n';
    for (const DistanceSample& row : result.rows) {
        out += format_row(row);
        out += '\n';
    }
    out += "# fit_offset=" + format_double(fit.offset);
    out += " fit_amplitude=" + format_double(fit.amplitude);
    out += " fit_wavelength_nm=" + (fit.wavelength_defined ? format_double(fit.wavelength) : std::string("nan"));
    out += " fit_phase=" + format_double(fit.phase);
    out += " fit_rms_residual=" + format_double(fit.rms_residual);
    out += '\n';
    out += "# config mode=" + cli.mode;
    out += " distance_min_nm=" + format_double(cli.distance_min_nm);
    out += " distance_max_nm=" + format_double(cli.distance_max_nm);
    out += " distance_steps=" + std::to_string(cli.distance_steps);
    out += " field_qubits=" + std::to_string(cli.field_qubits);
    out += " omega_factor=" + format_double(cli.omega_factor);
    out += " rabi_factor=" + format_double(cli.rabi_factor);
    out += " kappa=" + format_double(cli.kappa);
    out += " kappa_s=" + format_double(cli.kappa_s);
    out += " sim_time_fs=" + format_double(cli.sim_time_fs);
    out += " runs=" + std::to_string(cli.runs);
    out += " seed=" + std::to_string(cli.seed);
    out += " full_decomposition=" + std::to_string(cli.full_decomposition ? 1 : 0);
    out += '\n';
    return out;
}

inline void write_csv(const SweepResult& result, const FitResult& fit, const CliConfig& cli,
                      const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("write_csv: cannot open " + path);
    const std::string body = render_csv(result, fit, cli);
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f)
        throw std::runtime_error("write_csv: write failed for " + path);
}

// Reads the data rows back; comment lines are skipped.  Numeric fields
// round-trip bit-exactly against write_csv output.
inline SweepResult read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("read_csv: cannot open " + path);
    SweepResult result;
    std::string line;
    bool header_seen = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            throw std::runtime_error("read_csv: CR line ending in " + path);
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            if (line != csv_header_line())
                throw std::runtime_error("read_csv: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(line);
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 6)
            throw std::runtime_error("read_csv: expected 6 fields, got " +
                                     std::to_string(fields.size()));
        DistanceSample row;
        row.distance_nm = parse_double(fields[0]);
        row.mean_photon_count = parse_double(fields[1]);
        row.std_error = parse_double(fields[2]);
        row.mean_population = parse_double(fields[3]);
        row.runs = std::stol(fields[4]);
        row.steps = std::stol(fields[5]);
        result.rows.push_back(row);
    }
    if (!header_seen)
        throw std::runtime_error("read_csv: no header in " + path);
    return result;
}

} // namespace ionmirror
