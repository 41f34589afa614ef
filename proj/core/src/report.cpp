#include "wanderlab/report.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wanderlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_json(cplx z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json verdict_json(const VerdictRecord& rec) {
  ordered_json j;
  j["name"] = rec.name;
  j["computed"] = complex_json(rec.computed);
  j["reference"] = complex_json(rec.reference_value);
  j["abs_gap"] = rec.abs_gap;
  j["tolerance"] = rec.tolerance;
  j["verdict"] = to_string(rec.verdict);
  j["resolutions"] = rec.resolutions;
  j["independent"] =
      rec.independent_value ? complex_json(*rec.independent_value) : ordered_json();
  return j;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << x;
  return os.str();
}

// RFC-4180: quote when the field holds a comma, a quote, or a line break;
// embedded quotes double.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_json(const RunReport& report) {
  ordered_json j;
  j["command"] = report.command;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  j["parameters"] = params;
  ordered_json verdicts = ordered_json::array();
  for (const auto& rec : report.verdicts) verdicts.push_back(verdict_json(rec));
  j["verdicts"] = verdicts;
  j["wall_time"] = report.wall_time_seconds ? ordered_json(*report.wall_time_seconds)
                                            : ordered_json();
  return j.dump(2) + "\n";
}

std::string to_csv(const std::vector<VerdictRecord>& verdicts) {
  std::string out =
      "name,computed_re,computed_im,reference_re,reference_im,abs_gap,"
      "tolerance,verdict,resolutions,independent_re,independent_im\r\n";
  for (const auto& rec : verdicts) {
    std::string resolutions;
    for (std::size_t i = 0; i < rec.resolutions.size(); ++i) {
      if (i) resolutions += ';';
      resolutions += rec.resolutions[i];
    }
    out += csv_field(rec.name);
    out += ',' + format_double(rec.computed.real());
    out += ',' + format_double(rec.computed.imag());
    out += ',' + format_double(rec.reference_value.real());
    out += ',' + format_double(rec.reference_value.imag());
    out += ',' + format_double(rec.abs_gap);
    out += ',' + format_double(rec.tolerance);
    out += ',';
    out += to_string(rec.verdict);
    out += ',' + csv_field(resolutions);
    if (rec.independent_value) {
      out += ',' + format_double(rec.independent_value->real());
      out += ',' + format_double(rec.independent_value->imag());
    } else {
      out += ",,";
    }
    out += "\r\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file) throw std::runtime_error("write failed: " + path);
}

void write_ppm(const std::string& path, const GrayImage& image) {
  if (image.width < 1 || image.height < 1 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.width) * image.height) {
    throw std::invalid_argument("write_ppm: malformed image");
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << "P6\n" << image.width << " " << image.height << "\n255\n";
  for (const unsigned char g : image.pixels) {
    const char rgb[3] = {static_cast<char>(g), static_cast<char>(g),
                         static_cast<char>(g)};
    file.write(rgb, 3);
  }
  if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace wanderlab
