#include <adacut/config.hpp>
#include <adacut/errors.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace adacut {

namespace {

// A parsed value. Numbers keep their source text so integers survive
// untouched (seeds use the full 64-bit range).
struct Value
{
  enum class Kind
  {
    string,
    number,
    boolean,
    array
  } kind = Kind::string;
  std::string text;
  bool flag = false;
  std::vector<Value> items;
};

using Table = std::map<std::string, Value>;

[[noreturn]] void fail(std::size_t line, const std::string& what)
{
  throw ConfigError("scenario file line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment, honouring string literals.
std::string_view strip_comment(std::string_view s)
{
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_str && s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      in_str = !in_str;
    } else if (!in_str && s[i] == '#') {
      return s.substr(0, i);
    }
  }
  return s;
}

int bracket_balance(std::string_view s)
{
  int depth = 0;
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_str && s[i] == '\\')
      ++i;
    else if (s[i] == '"')
      in_str = !in_str;
    else if (!in_str && s[i] == '[')
      ++depth;
    else if (!in_str && s[i] == ']')
      --depth;
  }
  return depth;
}

class ValueParser
{
public:
  ValueParser(std::string_view src, std::size_t line)
    : src_(src)
    , line_(line)
  {}

  Value parse()
  {
    Value v = value();
    skip_ws();
    if (pos_ != src_.size())
      fail(line_, "unexpected trailing text '" + std::string(src_.substr(pos_)) + "'");
    return v;
  }

private:
  void skip_ws()
  {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      ++pos_;
  }

  Value value()
  {
    skip_ws();
    if (pos_ >= src_.size())
      fail(line_, "missing value");
    const char c = src_[pos_];
    if (c == '"')
      return string();
    if (c == '[')
      return array();
    return scalar();
  }

  Value string()
  {
    Value v;
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      char c = src_[pos_++];
      if (c == '\\') {
        if (pos_ >= src_.size())
          break;
        const char e = src_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(line_, std::string("unsupported escape \\") + e);
        }
      }
      v.text.push_back(c);
    }
    if (pos_ >= src_.size())
      fail(line_, "unterminated string");
    ++pos_;
    return v;
  }

  Value array()
  {
    Value v;
    v.kind = Value::Kind::array;
    ++pos_;
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      v.items.push_back(value());
      skip_ws();
      if (pos_ >= src_.size())
        fail(line_, "unterminated array");
      if (src_[pos_] == ',') {
        ++pos_;
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == ']') {
          ++pos_;
          return v;
        }
        continue;
      }
      if (src_[pos_] == ']') {
        ++pos_;
        return v;
      }
      fail(line_, "expected ',' or ']' in array");
    }
  }

  Value scalar()
  {
    const auto start = pos_;
    while (pos_ < src_.size() && src_[pos_] != ',' && src_[pos_] != ']' && src_[pos_] != ' ' &&
           src_[pos_] != '\t' && src_[pos_] != '\n')
      ++pos_;
    const std::string tok(src_.substr(start, pos_ - start));
    Value v;
    if (tok == "true" || tok == "false") {
      v.kind = Value::Kind::boolean;
      v.flag = tok == "true";
      return v;
    }
    v.kind = Value::Kind::number;
    for (char c : tok) {
      if (c != '_')
        v.text.push_back(c);
    }
    if (v.text.empty())
      fail(line_, "empty value");
    return v;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

double as_double(const Value& v, const std::string& key)
{
  if (v.kind != Value::Kind::number)
    throw ConfigError("key '" + key + "' expects a number");
  double out = 0.0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  if (*b == '+')
    ++b;
  const auto [p, ec] = std::from_chars(b, e, out);
  if (ec != std::errc() || p != e)
    throw ConfigError("key '" + key + "': '" + v.text + "' is not a number");
  return out;
}

std::uint64_t as_uint(const Value& v, const std::string& key)
{
  if (v.kind != Value::Kind::number)
    throw ConfigError("key '" + key + "' expects an integer");
  std::uint64_t out = 0;
  const char* b = v.text.data();
  const char* e = b + v.text.size();
  const auto [p, ec] = std::from_chars(b, e, out);
  if (ec == std::errc() && p == e)
    return out;
  // Accept integral floats such as 1e4.
  const double d = as_double(v, key);
  if (!(d >= 0.0 && d < 1.8e19 && std::floor(d) == d))
    throw ConfigError("key '" + key + "': '" + v.text + "' is not a non-negative integer");
  return static_cast<std::uint64_t>(d);
}

std::string as_string(const Value& v, const std::string& key)
{
  if (v.kind != Value::Kind::string)
    throw ConfigError("key '" + key + "' expects a string");
  return v.text;
}

// Scalars are accepted where a list is expected.
std::vector<Value> as_list(const Value& v)
{
  if (v.kind == Value::Kind::array)
    return v.items;
  return { v };
}

std::vector<double> as_doubles(const Value& v, const std::string& key)
{
  std::vector<double> out;
  for (const auto& item : as_list(v))
    out.push_back(as_double(item, key));
  return out;
}

const std::set<std::string>& known_keys()
{
  static const std::set<std::string> keys{ "id",        "problem",      "target",    "noise",
                                           "n",         "delta",        "lambda",    "kappa_grid",
                                           "K_grid",    "K_tilde_grid", "method_set", "replicates",
                                           "seed",      "alpha",        "grid_step", "grid_umax" };
  return keys;
}

std::vector<Scenario> build(const std::string& table_id, const Table& defaults, const Table& own)
{
  Table merged = defaults;
  for (const auto& [k, v] : own)
    merged[k] = v;

  Scenario base;
  base.id = table_id;
  std::vector<Value> targets, sizes;
  for (const auto& [key, v] : merged) {
    if (!known_keys().contains(key))
      throw ConfigError("scenario '" + table_id + "': unknown key '" + key + "'");
    if (key == "id")
      base.id = as_string(v, key);
    else if (key == "problem")
      base.problem = parse_problem(as_string(v, key));
    else if (key == "target")
      targets = as_list(v);
    else if (key == "noise")
      base.noise = as_string(v, key);
    else if (key == "n")
      sizes = as_list(v);
    else if (key == "delta")
      base.delta = as_double(v, key);
    else if (key == "lambda")
      base.lambda = as_double(v, key);
    else if (key == "kappa_grid")
      base.kappa_grid = as_doubles(v, key);
    else if (key == "K_grid")
      base.K_grid = as_doubles(v, key);
    else if (key == "K_tilde_grid")
      base.K_tilde_grid = as_doubles(v, key);
    else if (key == "method_set") {
      base.method_set.clear();
      for (const auto& item : as_list(v))
        base.method_set.push_back(parse_method(as_string(item, key)));
    } else if (key == "replicates")
      base.replicates = as_uint(v, key);
    else if (key == "seed")
      base.seed = as_uint(v, key);
    else if (key == "alpha")
      base.alpha = as_double(v, key);
    else if (key == "grid_step")
      base.grid_step = as_double(v, key);
    else if (key == "grid_umax")
      base.grid_umax = as_double(v, key);
  }

  const bool many_targets = merged.contains("target") && merged.at("target").kind == Value::Kind::array;
  const bool many_sizes = merged.contains("n") && merged.at("n").kind == Value::Kind::array;
  if (many_targets && targets.empty())
    throw ConfigError("scenario '" + table_id + "': empty target list");
  if (many_sizes && sizes.empty())
    throw ConfigError("scenario '" + table_id + "': empty n list");
  if (targets.empty())
    targets.push_back(Value{ Value::Kind::string, base.target, false, {} });
  if (sizes.empty())
    sizes.push_back(Value{ Value::Kind::number, std::to_string(base.n), false, {} });

  std::vector<Scenario> out;
  for (const auto& t : targets) {
    for (const auto& s : sizes) {
      Scenario sc = base;
      sc.target = as_string(t, "target");
      sc.n = as_uint(s, "n");
      if (many_targets)
        sc.id += "/" + sc.target;
      if (many_sizes)
        sc.id += "/n" + std::to_string(sc.n);
      out.push_back(std::move(sc));
    }
  }
  return out;
}

} // namespace

std::vector<Scenario> parse_scenarios(std::string_view text)
{
  Table defaults;
  std::vector<std::pair<std::string, Table>> tables;
  Table* current = nullptr;
  bool defaults_seen = false;

  std::istringstream in{ std::string(text) };
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty())
      continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(line_no, "malformed table header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (name == "defaults") {
        if (defaults_seen)
          fail(line_no, "duplicate [defaults] table");
        defaults_seen = true;
        current = &defaults;
        continue;
      }
      constexpr std::string_view prefix = "scenario.";
      if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size())
        fail(line_no, "unknown table [" + name + "]; expected [scenario.<id>] or [defaults]");
      std::string id = name.substr(prefix.size());
      if (id.size() >= 2 && id.front() == '"' && id.back() == '"')
        id = id.substr(1, id.size() - 2);
      for (const auto& [existing, _] : tables) {
        if (existing == id)
          fail(line_no, "duplicate scenario '" + id + "'");
      }
      tables.emplace_back(id, Table{});
      current = &tables.back().second;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(line_no, "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (key.empty())
      fail(line_no, "empty key");
    if (!current)
      fail(line_no, "key '" + key + "' outside of a table");

    std::string rhs(trim(line.substr(eq + 1)));
    const auto start_line = line_no;
    while (bracket_balance(rhs) > 0) {
      if (!std::getline(in, raw))
        fail(start_line, "unterminated array");
      ++line_no;
      rhs += "\n";
      rhs += trim(strip_comment(raw));
    }
    if (current->contains(key))
      fail(start_line, "duplicate key '" + key + "'");
    (*current)[key] = ValueParser(rhs, start_line).parse();
  }

  std::vector<Scenario> out;
  std::set<std::string> ids;
  for (const auto& [id, table] : tables) {
    for (auto& sc : build(id, defaults, table)) {
      if (!ids.insert(sc.id).second)
        throw ConfigError("duplicate scenario id '" + sc.id + "'");
      sc.validate();
      out.push_back(std::move(sc));
    }
  }
  return out;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenarios(ss.str());
}

} // namespace adacut
