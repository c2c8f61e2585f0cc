#include "harvestkit/fixtures.hpp"

#include "harvestkit/output.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace harvestkit {

const FixtureRow& FixtureSet::get(std::string_view name) const {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw std::out_of_range("no fixture named '" + std::string(name) + "'");
}

bool FixtureSet::contains(std::string_view name) const {
  for (const auto& r : rows)
    if (r.name == name) return true;
  return false;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("HARVESTKIT_FIXTURES"); env && *env) return env;
  return HARVESTKIT_FIXTURE_DIR;
}

namespace {

std::string row_body(const FixtureRow& r) {
  return r.name + '\t' + r.params + '\t' + format_double(r.value.real()) + '\t' +
         format_double(r.value.imag()) + '\t' + r.provenance;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

std::string format_fixtures(const std::vector<FixtureRow>& rows) {
  std::string out = "# name\tparams\tre\tim\tprovenance\trow_hash\n";
  for (const auto& r : rows) {
    const std::string body = row_body(r);
    out += body + '\t' + hex64(fnv1a(body)) + '\n';
  }
  return out;
}

void write_fixtures(const std::vector<FixtureRow>& rows, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / kFixtureFile, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / kFixtureFile).string());
  f << format_fixtures(rows);
}

FixtureSet load_fixtures(const std::filesystem::path& dir) {
  const auto path = dir / kFixtureFile;
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("fixture file not found: " + path.string());
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  FixtureSet set;
  set.hash = hex64(fnv1a(text));
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 6) throw std::runtime_error("malformed fixture row: " + line);
    FixtureRow r{cols[0], cols[1], {parse_double(cols[2]), parse_double(cols[3])}, cols[4]};
    if (hex64(fnv1a(row_body(r))) != cols[5])
      throw std::runtime_error("fixture row hash mismatch for '" + r.name + "'");
    set.rows.push_back(std::move(r));
  }
  return set;
}

} // namespace harvestkit
