#pragma once
#include <string>

#include "loewner/loops.hpp"
#include "loewner/uniformize.hpp"

namespace loewner {

// Loop files: {"coeffs": [[re, im], ...], "degree": M} with coeffs listed
// in ascending frequency k = -M..M. Config files: {"gamma1": <loop>,
// "gamma2": <loop>}. Parse failures throw validation_error.

std::string loop_to_json(const Loop& g);
Loop loop_from_json(const std::string& text);

std::string config_to_json(const TwoLoopConfig& cfg);
TwoLoopConfig config_from_json(const std::string& text);

std::string uniformization_to_json(const Uniformization& u);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// shortest 17-significant-digit decimal form, reproducible across runs
std::string format_g17(double x);

}
