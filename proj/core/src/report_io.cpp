#include <adacut/errors.hpp>
#include <adacut/harness.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <tuple>

namespace adacut {

namespace {

std::string shortest(double x)
{
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::string field(std::string_view s)
{
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep)
{
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_record(std::string_view line, std::size_t line_no)
{
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  if (quoted)
    throw ArgumentError("csv line " + std::to_string(line_no) + ": unterminated quote");
  return out;
}

double to_double(const std::string& s, std::size_t line_no)
{
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ArgumentError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

std::size_t to_size(const std::string& s, std::size_t line_no)
{
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ArgumentError("csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  return v;
}

} // namespace

void sort_reports(std::vector<RiskReport>& reports)
{
  // Missing hyperparameters sort first.
  auto key = [](const RiskReport& r) {
    return std::make_tuple(std::string_view(r.scenario), to_string(r.method), r.hyper.has_value(),
                           r.hyper.value_or(0.0));
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const RiskReport& a, const RiskReport& b) { return key(a) < key(b); });
}

std::string to_csv(std::vector<RiskReport> reports)
{
  sort_reports(reports);
  std::string out(csv_header);
  out += '\n';
  for (const auto& r : reports) {
    std::vector<std::string> cols{
      field(r.scenario),
      std::string(to_string(r.method)),
      r.hyper ? shortest(*r.hyper) : std::string(),
      std::to_string(r.n),
      r.delta ? shortest(*r.delta) : std::string(),
      shortest(r.mean_risk),
      shortest(r.std_risk),
      shortest(r.mean_cutoff),
      shortest(r.std_cutoff),
      std::to_string(r.replicates),
      field(join(r.warnings, ';')),
    };
    out += join(cols, ',');
    out += '\n';
  }
  return out;
}

void emit_csv(std::span<const RiskReport> reports, const std::filesystem::path& path)
{
  const std::string text = to_csv(std::vector<RiskReport>(reports.begin(), reports.end()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw ArgumentError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out)
    throw ArgumentError("failed writing " + path.string());
}

std::vector<RiskReport> parse_csv(std::string_view text)
{
  std::istringstream in{ std::string(text) };
  std::string line;
  if (!std::getline(in, line))
    throw ArgumentError("csv: missing header");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != csv_header)
    throw ArgumentError("csv: unexpected header '" + line + "'");

  std::vector<RiskReport> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    const auto cols = split_record(line, line_no);
    if (cols.size() != 11)
      throw ArgumentError("csv line " + std::to_string(line_no) + ": expected 11 columns");
    RiskReport r;
    r.scenario = cols[0];
    r.method = parse_method(cols[1]);
    if (!cols[2].empty())
      r.hyper = to_double(cols[2], line_no);
    r.n = to_size(cols[3], line_no);
    if (!cols[4].empty())
      r.delta = to_double(cols[4], line_no);
    r.mean_risk = to_double(cols[5], line_no);
    r.std_risk = to_double(cols[6], line_no);
    r.mean_cutoff = to_double(cols[7], line_no);
    r.std_cutoff = to_double(cols[8], line_no);
    r.replicates = to_size(cols[9], line_no);
    std::string_view w = cols[10];
    while (!w.empty()) {
      const auto semi = w.find(';');
      r.warnings.emplace_back(w.substr(0, semi));
      if (semi == std::string_view::npos)
        break;
      w.remove_prefix(semi + 1);
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RiskReport> read_csv(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ArgumentError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::vector<RiskReport> select_group(std::span<const RiskReport> reports, std::string_view group)
{
  std::vector<RiskReport> out;
  for (const auto& r : reports) {
    const std::string_view id = r.scenario;
    if (id == group || (id.size() > group.size() && id.substr(0, group.size()) == group &&
                        id[group.size()] == '/'))
      out.push_back(r);
  }
  return out;
}

} // namespace adacut
