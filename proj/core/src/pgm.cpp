#include "pbholo/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pbholo/error.hpp"

namespace pbholo {
namespace {

constexpr double kPhaseSteps = 65536.0;

std::filesystem::path sidecar(const std::filesystem::path& path) {
  return std::filesystem::path(path.string() + ".txt");
}

void write_p5_16(const std::filesystem::path& path, std::size_t rows, std::size_t cols,
                 const std::vector<std::uint16_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out << "P5\n" << cols << ' ' << rows << "\n65535\n";
  std::vector<char> bytes(data.size() * 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    bytes[2 * i] = static_cast<char>(data[i] >> 8);
    bytes[2 * i + 1] = static_cast<char>(data[i] & 0xff);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed: " + path.string());
}

void write_sidecar(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out(sidecar(path));
  if (!out) throw InputError("cannot open " + sidecar(path).string() + " for writing");
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

std::map<std::string, std::string> read_sidecar(const std::filesystem::path& path) {
  std::ifstream in(sidecar(path));
  if (!in) throw InputError("missing sidecar " + sidecar(path).string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

double number(const std::map<std::string, std::string>& kv, const std::string& key,
              const std::filesystem::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw InputError(sidecar(path).string() + ": missing " + key);
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw InputError(sidecar(path).string() + ": bad value for " + key);
  }
}

// Header tokens of a PNM file, skipping '#' comments.
std::string pnm_token(std::istream& in) {
  std::string tok;
  char ch;
  while (in.get(ch)) {
    if (ch == '#') {
      std::string rest;
      std::getline(in, rest);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(ch);
  }
  return tok;
}

struct Pnm {
  std::size_t cols = 0;
  std::size_t rows = 0;
  unsigned maxval = 0;
  std::vector<unsigned> data;
};

Pnm read_pnm(std::istream& in, const std::string& what) {
  const std::string magic = pnm_token(in);
  if (magic != "P5" && magic != "P2") throw InputError(what + ": not a P2/P5 PGM file");
  Pnm p;
  try {
    p.cols = std::stoul(pnm_token(in));
    p.rows = std::stoul(pnm_token(in));
    p.maxval = static_cast<unsigned>(std::stoul(pnm_token(in)));
  } catch (const std::logic_error&) {
    throw InputError(what + ": malformed PGM header");
  }
  if (p.cols == 0 || p.rows == 0 || p.maxval == 0 || p.maxval > 65535) {
    throw InputError(what + ": malformed PGM header");
  }
  const std::size_t count = p.cols * p.rows;
  p.data.resize(count);
  if (magic == "P2") {
    for (auto& v : p.data) {
      const std::string tok = pnm_token(in);
      if (tok.empty()) throw InputError(what + ": truncated PGM data");
      v = static_cast<unsigned>(std::stoul(tok));
    }
  } else {
    const std::size_t width = p.maxval > 255 ? 2 : 1;
    std::vector<unsigned char> bytes(count * width);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) {
      throw InputError(what + ": truncated PGM data");
    }
    for (std::size_t i = 0; i < count; ++i) {
      p.data[i] = width == 2 ? (unsigned{bytes[2 * i]} << 8) | bytes[2 * i + 1] : bytes[i];
    }
  }
  for (unsigned v : p.data) {
    if (v > p.maxval) throw InputError(what + ": sample exceeds maxval");
  }
  return p;
}

}  // namespace

void write_phase_pgm(const std::filesystem::path& path, const PhaseMap& phase, double wavelength) {
  phase.validate();
  std::vector<std::uint16_t> data(phase.values().size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = std::round((phase.values()[i] + kPi) / kTwoPi * kPhaseSteps);
    data[i] = static_cast<std::uint16_t>(static_cast<long>(v) % 65536);
  }
  write_p5_16(path, phase.rows(), phase.cols(), data);
  write_sidecar(path, {{"pitch_m", fmt(phase.pitch())},
                       {"levels", std::to_string(phase.levels())},
                       {"wavelength_m", fmt(wavelength)}});
}

PhaseFile read_phase_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  const Pnm p = read_pnm(in, path.string());
  if (p.maxval != 65535) throw InputError(path.string() + ": phase PGM must be 16-bit");
  const auto kv = read_sidecar(path);
  const double pitch = number(kv, "pitch_m", path);
  const double levels = number(kv, "levels", path);
  const double wavelength = number(kv, "wavelength_m", path);
  if (levels < 0 || levels != std::floor(levels)) {
    throw InputError(sidecar(path).string() + ": levels must be a non-negative integer");
  }
  std::vector<double> values(p.data.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = wrap_phase(-kPi + static_cast<double>(p.data[i]) * kTwoPi / kPhaseSteps);
  }
  PhaseMap map(p.rows, p.cols, pitch, std::move(values));
  if (levels > 0) map = quantize_phase(map, static_cast<int>(levels));
  return {std::move(map), wavelength};
}

void write_intensity_pgm(const std::filesystem::path& path, const RetinaImage& image) {
  const double peak = image.intensity.empty()
                          ? 0.0
                          : *std::max_element(image.intensity.begin(), image.intensity.end());
  std::vector<std::uint16_t> data(image.intensity.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = peak > 0.0 ? static_cast<std::uint16_t>(std::lround(image.intensity[i] / peak * 65535.0))
                         : 0;
  }
  write_p5_16(path, image.n, image.n, data);
  write_sidecar(path, {{"pitch_m", fmt(image.pitch)},
                       {"plane", image.plane == ImagePlane::Retina ? "retina" : "conjugate"},
                       {"total_power", fmt(image.total_power())}});
}

DisplayPattern read_pattern(std::istream& in) {
  const int first = in.peek();
  if (first == 'P') {
    const Pnm p = read_pnm(in, "pattern");
    if (p.maxval > 255) throw InputError("pattern: PGM must be 8-bit");
    std::vector<bool> mask(p.data.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = p.data[i] >= 128;
    return DisplayPattern(p.rows, p.cols, std::move(mask));
  }
  std::vector<bool> mask;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t count = 0;
    for (char ch : line) {
      if (ch == ' ' || ch == '\t') continue;
      if (ch != '0' && ch != '1') {
        throw InputError("pattern line " + std::to_string(line_no) + ": unexpected character '" +
                         std::string(1, ch) + "'");
      }
      mask.push_back(ch == '1');
      ++count;
    }
    if (rows == 0) cols = count;
    if (count != cols) {
      throw InputError("pattern line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cols) + " cells, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw InputError("pattern: no rows");
  return DisplayPattern(rows, cols, std::move(mask));
}

DisplayPattern read_pattern(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open pattern " + path.string());
  return read_pattern(in);
}

}  // namespace pbholo
