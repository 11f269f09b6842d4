#include "pi2ch/cli/output.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <unistd.h>

namespace pi2ch::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw NonFiniteError("refusing to emit a non-finite number");
  return fmt::format("{:.17g}", v);
}

CsvWriter::CsvWriter(std::initializer_list<std::string> header) : columns_(header.size()) {
  bool first = true;
  for (const auto& h : header) {
    if (!first) text_ += ',';
    text_ += h;
    first = false;
  }
  text_ += '\n';
}

void CsvWriter::add_row(std::initializer_list<Cell> cells) {
  if (cells.size() != columns_) throw DomainError("CsvWriter: row width differs from header");
  bool first = true;
  for (const auto& c : cells) {
    if (!first) text_ += ',';
    first = false;
    if (const long* i = std::get_if<long>(&c)) {
      text_ += fmt::format("{}", *i);
    } else {
      text_ += format_number(std::get<double>(c));
    }
  }
  text_ += '\n';
  ++rows_;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

}  // namespace pi2ch::cli
