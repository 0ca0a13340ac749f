#include "robustpred/dataset_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "robustpred/error.h"
#include "robustpred/text.h"

namespace robustpred {
namespace {

void check_writable(std::string_view field) {
  if (field.find_first_of(",\n\r") != std::string_view::npos) {
    throw Error("value '" + std::string(field) + "' contains the delimiter or a newline");
  }
}

}  // namespace

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

Dataset read_dataset(std::istream& in, const std::vector<std::string>& class_set) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "header", "missing header row");
  ++line_no;
  auto header = text::split(text::chomp(line));
  if (header.empty() || header.back() != kBehaviorColumn) {
    throw ParseError(line_no, "header", "last column must be 'behavior'");
  }
  header.pop_back();
  const std::size_t n_attr = header.size();

  std::vector<std::vector<std::string>> domains(n_attr);
  std::vector<std::unordered_map<std::string, ValueId>> index(n_attr);
  std::vector<std::string> classes = class_set;
  std::unordered_map<std::string, ClassId> class_index;
  for (std::size_t c = 0; c < classes.size(); ++c) class_index.emplace(classes[c], static_cast<ClassId>(c));

  std::vector<std::pair<std::vector<ValueId>, ClassId>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = text::chomp(line);
    if (trimmed.empty()) continue;
    const auto fields = text::split(trimmed);
    if (fields.size() != n_attr + 1) {
      throw ParseError(line_no, "row",
                       "expected " + std::to_string(n_attr + 1) + " fields, found " +
                           std::to_string(fields.size()));
    }
    std::vector<ValueId> values(n_attr);
    for (std::size_t a = 0; a < n_attr; ++a) {
      if (fields[a].empty()) throw ParseError(line_no, header[a], "empty value");
      auto [it, inserted] = index[a].emplace(fields[a], static_cast<ValueId>(domains[a].size()));
      if (inserted) domains[a].push_back(fields[a]);
      values[a] = it->second;
    }
    const std::string& label = fields.back();
    if (label.empty()) throw ParseError(line_no, std::string(kBehaviorColumn), "empty label");
    auto [cit, cinserted] = class_index.emplace(label, static_cast<ClassId>(classes.size()));
    if (cinserted) classes.push_back(label);
    rows.emplace_back(std::move(values), cit->second);
  }

  std::shared_ptr<const AttributeSchema> schema;
  try {
    schema = std::make_shared<AttributeSchema>(std::move(header), std::move(domains),
                                               std::move(classes));
  } catch (const Error& e) {
    throw ParseError(1, "header", e.what());
  }
  return Dataset::from_labeled(std::move(schema), std::move(rows));
}

Dataset read_dataset_file(const std::filesystem::path& path,
                          const std::vector<std::string>& class_set) {
  auto in = open_input(path);
  return read_dataset(in, class_set);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  const auto& schema = dataset.schema();
  for (const auto& name : schema.attributes()) {
    check_writable(name);
    out << name << ',';
  }
  out << kBehaviorColumn << '\n';
  for (const Instance& inst : dataset.instances()) {
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      const auto value = schema.value_name(a, inst.values.at(a));
      check_writable(value);
      out << value << ',';
    }
    const auto& label = schema.class_label(inst.label);
    check_writable(label);
    out << label << '\n';
  }
}

void write_dataset_file(const std::filesystem::path& path, const Dataset& dataset) {
  auto out = open_output(path);
  write_dataset(out, dataset);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace robustpred
