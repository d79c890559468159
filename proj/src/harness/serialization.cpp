#include "relcommit/harness/serialization.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::size_t column(const CsvTable& csv, std::string_view name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return i;
  throw InputError("missing column '" + std::string(name) + "'");
}

std::size_t row_line(const CsvTable& csv, std::size_t r) { return r < csv.row_lines.size() ? csv.row_lines[r] : r + 2; }

double cell_double(const CsvTable& csv, std::size_t r, std::size_t c) {
  try {
    return parse_double(csv.rows[r][c]);
  } catch (const InputError& e) {
    throw InputError(line_prefix(row_line(csv, r)) + e.what());
  }
}

int cell_bit(const CsvTable& csv, std::size_t r, std::size_t c) {
  const auto& v = csv.rows[r][c];
  if (v == "0") return 0;
  if (v == "1") return 1;
  throw InputError(line_prefix(row_line(csv, r)) + "expected 0 or 1, got '" + v + "'");
}

Flag cell_flag(const CsvTable& csv, std::size_t r, std::size_t c) {
  const auto& v = csv.rows[r][c];
  if (v == "accept") return Flag::Accept;
  if (v == "reject") return Flag::Reject;
  throw InputError(line_prefix(row_line(csv, r)) + "expected accept or reject, got '" + v + "'");
}

void check_schema(const Json& j) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion) {
    throw InputError("unsupported or missing schema_version");
  }
}

Json point_json(const SpacetimePoint& p) { return Json{{"x", p.x}, {"t", p.t}}; }

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InputError("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw InputError("not a number: '" + s + "'");
  return v;
}

std::string write_csv(const CsvTable& table) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable csv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      std::string field(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      while (!field.empty() && field.front() == ' ') field.erase(field.begin());
      while (!field.empty() && field.back() == ' ') field.pop_back();
      fields.push_back(std::move(field));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (csv.header.empty()) {
      csv.header = std::move(fields);
      continue;
    }
    if (fields.size() != csv.header.size()) {
      throw InputError(line_prefix(line_no) + "expected " + std::to_string(csv.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    csv.rows.push_back(std::move(fields));
    csv.row_lines.push_back(line_no);
  }
  if (csv.header.empty()) throw InputError("line 1: empty CSV input");
  return csv;
}

Json to_json(const BoundReport& r) {
  return Json{{"schema_version", kSchemaVersion}, {"n", r.n},
              {"delta_star", r.delta_star},       {"epsilon", r.epsilon},
              {"term_entropy", r.term_entropy},   {"term_hoeffding", r.term_hoeffding}};
}

BoundReport bound_report_from_json(const Json& j) {
  check_schema(j);
  BoundReport r;
  r.n = j.at("n").get<std::size_t>();
  r.delta_star = j.at("delta_star").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.term_entropy = j.at("term_entropy").get<double>();
  r.term_hoeffding = j.at("term_hoeffding").get<double>();
  return r;
}

CsvTable bounds_csv(const std::vector<BoundReport>& reports) {
  CsvTable csv;
  csv.header = {"schema_version", "n", "delta_star", "epsilon", "term_entropy", "term_hoeffding"};
  for (const auto& r : reports) {
    csv.rows.push_back({std::to_string(kSchemaVersion), std::to_string(r.n), format_double(r.delta_star),
                        format_double(r.epsilon), format_double(r.term_entropy), format_double(r.term_hoeffding)});
  }
  return csv;
}

std::vector<BoundReport> bounds_from_csv(const CsvTable& csv) {
  const auto cn = column(csv, "n"), cd = column(csv, "delta_star"), ce = column(csv, "epsilon"),
             ct = column(csv, "term_entropy"), ch = column(csv, "term_hoeffding");
  std::vector<BoundReport> out;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    BoundReport b;
    const double n = cell_double(csv, r, cn);
    if (!(n >= 1 && n == std::floor(n))) throw InputError(line_prefix(row_line(csv, r)) + "n must be a positive integer");
    b.n = static_cast<std::size_t>(n);
    b.delta_star = cell_double(csv, r, cd);
    b.epsilon = cell_double(csv, r, ce);
    b.term_entropy = cell_double(csv, r, ct);
    b.term_hoeffding = cell_double(csv, r, ch);
    out.push_back(b);
  }
  return out;
}

Json to_json(const JointOutcomeTable& table) {
  Json rows = Json::array();
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (Flag f : {Flag::Accept, Flag::Reject})
        for (Flag g : {Flag::Accept, Flag::Reject})
          rows.push_back(Json{{"b", b},
                              {"b_prime", bp},
                              {"bob", std::string(flag_name(f))},
                              {"brian", std::string(flag_name(g))},
                              {"probability", table(b, bp, f, g)}});
  return Json{{"schema_version", kSchemaVersion}, {"entries", rows}};
}

JointOutcomeTable table_from_json(const Json& j) {
  check_schema(j);
  JointOutcomeTable::Entries e{};
  std::array<bool, 16> seen{};
  for (const auto& row : j.at("entries")) {
    const int b = row.at("b").get<int>(), bp = row.at("b_prime").get<int>();
    if ((b != 0 && b != 1) || (bp != 0 && bp != 1)) throw InputError("table inputs must be 0 or 1");
    auto flag = [](const Json& v) {
      const auto s = v.get<std::string>();
      if (s == "accept") return Flag::Accept;
      if (s == "reject") return Flag::Reject;
      throw InputError("flag must be accept or reject, got '" + s + "'");
    };
    const auto i = JointOutcomeTable::index(b, bp, flag(row.at("bob")), flag(row.at("brian")));
    if (seen[i]) throw InputError("duplicate table entry");
    seen[i] = true;
    e[i] = row.at("probability").get<double>();
  }
  for (bool s : seen)
    if (!s) throw InputError("table must list all 16 entries");
  return JointOutcomeTable(e);
}

CsvTable table_csv(const JointOutcomeTable& table) {
  CsvTable csv;
  csv.header = {"b", "b_prime", "bob", "brian", "probability"};
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (Flag f : {Flag::Accept, Flag::Reject})
        for (Flag g : {Flag::Accept, Flag::Reject})
          csv.rows.push_back({std::to_string(b), std::to_string(bp), std::string(flag_name(f)),
                              std::string(flag_name(g)), format_double(table(b, bp, f, g))});
  return csv;
}

JointOutcomeTable table_from_csv(const CsvTable& csv) {
  const auto cb = column(csv, "b"), cbp = column(csv, "b_prime"), cf = column(csv, "bob"), cg = column(csv, "brian"),
             cp = column(csv, "probability");
  JointOutcomeTable::Entries e{};
  std::array<bool, 16> seen{};
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto i = JointOutcomeTable::index(cell_bit(csv, r, cb), cell_bit(csv, r, cbp), cell_flag(csv, r, cf),
                                            cell_flag(csv, r, cg));
    if (seen[i]) throw InputError(line_prefix(row_line(csv, r)) + "duplicate table entry");
    seen[i] = true;
    e[i] = cell_double(csv, r, cp);
  }
  for (bool s : seen)
    if (!s) throw InputError("table must list all 16 entries");
  return JointOutcomeTable(e);
}

JointOutcomeTable parse_table(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      // byte offset -> line number
      const auto upto = std::min<std::size_t>(e.byte, text.size());
      const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
      throw InputError(line_prefix(line) + "malformed JSON");
    }
    try {
      return table_from_json(j);
    } catch (const Json::exception& e) {
      throw InputError(std::string("bad table JSON: ") + e.what());
    }
  }
  return table_from_csv(parse_csv(text));
}

Json to_json(const SampledEstimate& s) {
  return Json{{"trials", s.trials}, {"p0", s.p0},       {"p1", s.p1},       {"alpha", s.alpha},
              {"se_p0", s.se_p0},   {"se_p1", s.se_p1}, {"se_alpha", s.se_alpha}};
}

Json to_json(const AttackReport& r) {
  Json j{{"schema_version", kSchemaVersion},
         {"name", r.name},
         {"n", r.n},
         {"p0", r.p0},
         {"p1", r.p1},
         {"p0_plus_p1", r.p0 + r.p1},
         {"alpha", r.alpha},
         {"pass_probability", r.pass_probability},
         {"bound", r.bound},
         {"delta_star", r.delta_star},
         {"gap", 1.0 + r.bound - (r.p0 + r.p1)},
         {"satisfied", r.satisfied}};
  j["sampled"] = r.sampled ? to_json(*r.sampled) : Json(nullptr);
  return j;
}

AttackReport attack_report_from_json(const Json& j) {
  check_schema(j);
  AttackReport r;
  r.name = j.at("name").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.p0 = j.at("p0").get<double>();
  r.p1 = j.at("p1").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.pass_probability = j.at("pass_probability").get<double>();
  r.bound = j.at("bound").get<double>();
  r.delta_star = j.at("delta_star").get<double>();
  r.satisfied = j.at("satisfied").get<bool>();
  if (j.contains("sampled") && !j.at("sampled").is_null()) {
    const auto& s = j.at("sampled");
    SampledEstimate e;
    e.trials = s.at("trials").get<std::uint64_t>();
    e.p0 = s.at("p0").get<double>();
    e.p1 = s.at("p1").get<double>();
    e.alpha = s.at("alpha").get<double>();
    e.se_p0 = s.at("se_p0").get<double>();
    e.se_p1 = s.at("se_p1").get<double>();
    e.se_alpha = s.at("se_alpha").get<double>();
    r.sampled = e;
  }
  return r;
}

CsvTable attacks_csv(const std::vector<AttackReport>& reports) {
  CsvTable csv;
  csv.header = {"schema_version", "name",  "n",          "p0",        "p1",         "alpha",   "pass_probability",
                "bound",          "delta_star", "satisfied", "trials", "sampled_p0", "sampled_p1", "sampled_alpha"};
  for (const auto& r : reports) {
    std::vector<std::string> row{std::to_string(kSchemaVersion), r.name, std::to_string(r.n), format_double(r.p0),
                                 format_double(r.p1), format_double(r.alpha), format_double(r.pass_probability),
                                 format_double(r.bound), format_double(r.delta_star), r.satisfied ? "1" : "0"};
    if (r.sampled) {
      row.insert(row.end(), {std::to_string(r.sampled->trials), format_double(r.sampled->p0),
                             format_double(r.sampled->p1), format_double(r.sampled->alpha)});
    } else {
      row.insert(row.end(), {"0", "", "", ""});
    }
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

Json to_json(const ComposabilityResult& result, std::size_t n) {
  return Json{{"schema_version", kSchemaVersion},
              {"n", n},
              {"per_bit_epsilon", result.per_bit_epsilon},
              {"string_sum", result.string_sum}};
}

Json to_json(const ProtocolTranscript& tr) {
  Json messages = Json::array();
  for (const auto& m : tr.messages()) {
    Json j{{"phase", std::string(phase_name(m.phase))},
           {"sender", std::string(agent_name(m.sender))},
           {"receiver", std::string(agent_name(m.receiver))},
           {"label", m.label}};
    if (const auto* bits = std::get_if<BitString>(&m.payload)) {
      j["bits"] = bits->to_string();
    } else {
      Json q = Json::array();
      for (auto id : std::get<RegisterHandle>(m.payload).qubits) q.push_back(id.value);
      j["qubits"] = q;
    }
    if (m.emitted) j["emitted"] = point_json(*m.emitted);
    if (m.delivered) j["delivered"] = point_json(*m.delivered);
    messages.push_back(std::move(j));
  }
  Json j{{"protocol", tr.protocol()},
         {"split", std::string(split_name(tr.model().kind))},
         {"command", std::string(command_name(tr.model().command))},
         {"messages", messages}};
  j["flag"] = tr.flag() ? Json(std::string(flag_name(*tr.flag()))) : Json(nullptr);
  j["committed_bit"] = tr.committed_bit() ? Json(*tr.committed_bit()) : Json(nullptr);
  j["opened_bit"] = tr.opened_bit() ? Json(*tr.opened_bit()) : Json(nullptr);
  return j;
}

}  // namespace relcommit
