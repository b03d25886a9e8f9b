#pragma once

#include <string>
#include <vector>

#include "accretive/pipeline.hpp"

namespace accretive {

enum class ReportFormat { Json, Csv, Both };

/// Serialized report; byte-identical for identical reports.
std::string report_json(const VerificationReport& report);

/// One CSV file body with columns index,re,im,modulus,s_number.
std::string spectrum_csv(const SpectrumRecord& spectrum);

/// Writes report.json and/or one CSV per spectrum into dir and returns the
/// paths written. Throws IoError when dir or a file cannot be written.
std::vector<std::string> emit_report(const VerificationReport& report, const std::string& dir,
                                     ReportFormat format = ReportFormat::Both);

std::vector<std::string> write_spectra_csv(const std::vector<SizeReport>& sizes, const std::string& dir);

}  // namespace accretive
