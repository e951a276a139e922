#include "mapfp/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "mapfp/error.hpp"

namespace mapfp::io {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

bool is_decimal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

Json encode(const BigInt& x) {
  if (x >= 0 && x <= kMaxPlainInteger) return Json(static_cast<std::uint64_t>(x));
  if (x < 0 && -x <= kMaxPlainInteger) return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

BigInt decode(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!is_decimal(s)) parse_error(where + ": '" + s + "' is not a decimal integer");
    return BigInt(s);
  }
  parse_error(where + ": expected an integer or a decimal string");
}

std::vector<BigInt> decode_array(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) parse_error(std::string("missing field '") + key + "'");
  if (!it->is_array()) parse_error(std::string("field '") + key + "' must be an array");
  std::vector<BigInt> out;
  out.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    out.push_back(decode((*it)[i], std::string(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t decode_size(const Json& j, const std::string& where) {
  const BigInt v = decode(j, where);
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max())) {
    parse_error(where + ": out of range");
  }
  return static_cast<std::size_t>(v);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
}

Json encode_params(const reductions::ReductionParams& p) {
  Json j = Json::object();
  j["kind"] = std::string(reductions::to_string(p.kind));
  j["K"] = encode(p.K);
  j["N"] = encode(p.N);
  j["L"] = encode(p.L);
  j["M"] = encode(p.M);
  j["target"] = Json{{"num", encode(p.target.num)}, {"den", encode(p.target.den)}};
  j["sourceSize"] = p.source_size;
  j["groups"] = p.groups;
  return j;
}

reductions::ReductionParams decode_params(const Json& j) {
  if (!j.is_object()) parse_error("'params' must be an object");
  auto field = [&](const char* key) -> const Json& {
    const auto it = j.find(key);
    if (it == j.end()) parse_error(std::string("params: missing field '") + key + "'");
    return *it;
  };
  reductions::ReductionParams p;
  const Json& kind = field("kind");
  if (!kind.is_string()) parse_error("params.kind must be a string");
  p.kind = reductions::parse_reduction_kind(kind.get<std::string>());
  p.K = decode(field("K"), "params.K");
  p.N = decode(field("N"), "params.N");
  p.L = decode(field("L"), "params.L");
  p.M = decode(field("M"), "params.M");
  const Json& target = field("target");
  if (!target.is_object() || !target.contains("num") || !target.contains("den")) {
    parse_error("params.target must be {\"num\":..,\"den\":..}");
  }
  p.target = RatioForm(decode(target["num"], "params.target.num"),
                       decode(target["den"], "params.target.den"));
  p.source_size = decode_size(field("sourceSize"), "params.sourceSize");
  p.groups = decode_size(field("groups"), "params.groups");
  return p;
}

Json encode_labels(const std::vector<reductions::ItemLabel>& labels) {
  Json a = Json::array();
  Json b = Json::array();
  for (const auto& l : labels) {
    a.push_back(std::string(reductions::to_string(l.profit)));
    b.push_back(std::string(reductions::to_string(l.time)));
  }
  return Json{{"a", std::move(a)}, {"b", std::move(b)}};
}

std::vector<reductions::ItemLabel> decode_labels(const Json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j["a"].is_array() ||
      !j["b"].is_array()) {
    parse_error("'labels' must be {\"a\":[..],\"b\":[..]}");
  }
  const Json& a = j["a"];
  const Json& b = j["b"];
  if (a.size() != n || b.size() != n) {
    throw Error(ErrorCode::ValidationError, "labels must have one entry per item");
  }
  std::vector<reductions::ItemLabel> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i].is_string() || !b[i].is_string()) parse_error("labels must be strings");
    out[i].profit = reductions::parse_profit_label(a[i].get<std::string>());
    out[i].time = reductions::parse_time_label(b[i].get<std::string>());
  }
  return out;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json encode_instance(const Instance& inst) {
  Json j = Json::object();
  j["m"] = inst.group_count();
  Json a = Json::array();
  Json b = Json::array();
  for (const auto& x : inst.profits()) a.push_back(encode(x));
  for (const auto& x : inst.times()) b.push_back(encode(x));
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) parse_error("instance document must be a JSON object");

  std::vector<std::string> warnings;
  for (const auto& [key, value] : doc.items()) {
    if (key != "m" && key != "a" && key != "b" && key != "params" && key != "labels") {
      warnings.push_back("ignored unknown field '" + key + "'");
    }
  }

  const auto m_it = doc.find("m");
  if (m_it == doc.end()) parse_error("missing field 'm'");
  if (!m_it->is_number_integer()) parse_error("field 'm' must be an integer");
  const std::int64_t m = m_it->is_number_unsigned()
                             ? static_cast<std::int64_t>(std::min<std::uint64_t>(
                                   m_it->get<std::uint64_t>(), std::numeric_limits<std::int64_t>::max()))
                             : m_it->get<std::int64_t>();
  auto a = decode_array(doc, "a");
  auto b = decode_array(doc, "b");

  std::optional<Instance> inst;
  try {
    inst = validate_instance(std::move(a), std::move(b), m);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, std::string(to_string(e.code())) + ": " + e.what());
  }

  InstanceDocument out{std::move(*inst), std::nullopt, {}, std::move(warnings)};
  if (const auto it = doc.find("params"); it != doc.end()) out.params = decode_params(*it);
  if (const auto it = doc.find("labels"); it != doc.end()) {
    out.labels = decode_labels(*it, out.inst.size());
  }
  return out;
}

InstanceDocument read_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path));
}

std::string format_instance(const Instance& inst) { return dump(encode_instance(inst)); }

std::string format_instance(const InstanceDocument& doc) {
  Json j = encode_instance(doc.inst);
  if (doc.params) j["params"] = encode_params(*doc.params);
  if (!doc.labels.empty()) j["labels"] = encode_labels(doc.labels);
  return dump(j);
}

std::string format_instance(const reductions::GeneratedInstance& gen) {
  Json j = encode_instance(gen.inst);
  j["params"] = encode_params(gen.params);
  j["labels"] = encode_labels(gen.labels);
  return dump(j);
}

std::string write_instance(const std::filesystem::path& path, const Instance& inst) {
  std::string bytes = format_instance(inst);
  write_file(path, bytes);
  return bytes;
}

std::string write_instance(const std::filesystem::path& path,
                           const reductions::GeneratedInstance& gen) {
  std::string bytes = format_instance(gen);
  write_file(path, bytes);
  return bytes;
}

Assignment parse_assignment(std::string_view text) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) parse_error("assignment document must be a JSON object");
  const auto it = doc.find("assignment");
  if (it == doc.end()) parse_error("missing field 'assignment'");
  if (!it->is_array()) parse_error("field 'assignment' must be an array");
  Assignment asg;
  asg.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    const Json& g = (*it)[i];
    if (!g.is_number_unsigned()) {
      parse_error("assignment[" + std::to_string(i) + "] must be a non-negative integer");
    }
    asg.push_back(static_cast<std::size_t>(g.get<std::uint64_t>()));
  }
  return asg;
}

Assignment read_assignment(const std::filesystem::path& path) {
  return parse_assignment(read_file(path));
}

std::string format_assignment(const Assignment& asg) {
  Json j = Json::object();
  j["assignment"] = asg;
  return dump(j);
}

std::string write_assignment(const std::filesystem::path& path, const Assignment& asg) {
  std::string bytes = format_assignment(asg);
  write_file(path, bytes);
  return bytes;
}

void validate_assignment(const Instance& inst, const Assignment& asg) {
  try {
    check_assignment(inst, asg);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
}

RatioForm parse_ratio(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view p = text.substr(0, slash);
  const std::string_view q = slash == std::string_view::npos ? "1" : text.substr(slash + 1);
  auto digits = [](std::string_view s) { return is_decimal(s) && s.front() != '-'; };
  if (!digits(p) || !digits(q)) parse_error("'" + std::string(text) + "' is not of the form p/q");
  return RatioForm(BigInt(std::string(p)), BigInt(std::string(q)));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to '" + path.string() + "'");
}

}  // namespace mapfp::io
