#ifndef ROBUSTPRED_DATASET_IO_H_
#define ROBUSTPRED_DATASET_IO_H_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustpred/dataset.h"

namespace robustpred {

// Column holding the label in processed-dataset files.
inline constexpr std::string_view kBehaviorColumn = "behavior";

// Processed-dataset format: comma-delimited, header row = attribute names
// followed by "behavior", one instance per row.
//
// Domains are the observed values in first-seen order. The class set starts
// as `class_set` and any further labels are appended in first-seen order.
// Throws ParseError on a bad header, wrong field count (which is how a value
// containing the delimiter shows up) or an empty field.
Dataset read_dataset(std::istream& in,
                     const std::vector<std::string>& class_set = default_class_set());
Dataset read_dataset_file(const std::filesystem::path& path,
                          const std::vector<std::string>& class_set = default_class_set());

// Throws Error if any value or label contains the delimiter or a newline.
void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset_file(const std::filesystem::path& path, const Dataset& dataset);

// Opens for writing, throwing Error with the path on failure.
std::ofstream open_output(const std::filesystem::path& path);
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace robustpred

#endif  // ROBUSTPRED_DATASET_IO_H_
