#include "shallowwell/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace shallowwell::cli {

namespace {

std::string cell_text(const Cell &c, const char *missing) {
  if (!c)
    return missing;
  if (const auto *d = std::get_if<double>(&*c))
    return format_number(*d);
  if (const auto *l = std::get_if<long>(&*c))
    return std::to_string(*l);
  return std::get<std::string>(*c);
}

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"')
      out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_text(const Report &r) {
  std::ostringstream os;
  for (const auto &[k, v] : r.meta)
    os << "# " << k << ": " << v << '\n';
  for (const auto &t : r.tables) {
    os << "\n[" << t.name << "]\n";
    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      width[j] = t.columns[j].size();
    for (const auto &row : t.rows) {
      std::vector<std::string> line;
      for (std::size_t j = 0; j < row.size(); ++j) {
        line.push_back(cell_text(row[j], "-"));
        width[j] = std::max(width[j], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string> &line) {
      std::string s;
      for (std::size_t j = 0; j < line.size(); ++j) {
        if (j)
          s += "  ";
        s += std::string(width[j] - line[j].size(), ' ') + line[j];
      }
      s.erase(s.find_last_not_of(' ') + 1);
      os << s << '\n';
    };
    emit(t.columns);
    for (const auto &line : cells)
      emit(line);
  }
  return os.str();
}

std::string render_csv(const Report &r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.tables.size(); ++i) {
    const auto &t = r.tables[i];
    if (i)
      os << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      os << (j ? "," : "") << csv_escape(t.columns[j]);
    os << '\n';
    for (const auto &row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? "," : "") << csv_escape(cell_text(row[j], ""));
      os << '\n';
    }
  }
  return os.str();
}

std::string render_json(const Report &r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["command"] = r.command;
  ordered_json meta = ordered_json::object();
  for (const auto &[k, v] : r.meta)
    meta[k] = v;
  doc["meta"] = meta;
  ordered_json tables = ordered_json::array();
  for (const auto &t : r.tables) {
    ordered_json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (const auto &row : t.rows) {
      ordered_json jr = ordered_json::array();
      for (const auto &c : row) {
        if (!c)
          jr.push_back(nullptr);
        else if (const auto *d = std::get_if<double>(&*c))
          jr.push_back(std::isfinite(*d) ? ordered_json(std::stod(
                                               format_number(*d)))
                                         : ordered_json(nullptr));
        else if (const auto *l = std::get_if<long>(&*c))
          jr.push_back(*l);
        else
          jr.push_back(std::get<std::string>(*c));
      }
      rows.push_back(std::move(jr));
    }
    jt["rows"] = std::move(rows);
    tables.push_back(std::move(jt));
  }
  doc["tables"] = std::move(tables);
  return doc.dump(2) + "\n";
}

} // namespace

std::string format_number(double v) {
  if (v == 0.0)
    return "0"; // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string render(const Report &r, Format f) {
  switch (f) {
  case Format::Csv:
    return render_csv(r);
  case Format::Json:
    return render_json(r);
  case Format::Text:
    break;
  }
  return render_text(r);
}

} // namespace shallowwell::cli
