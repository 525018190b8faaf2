#pragma once

#include <functional>
#include <string>
#include <vector>

namespace augkit::eval {

// One classifier answer: the item it refers to plus the ranked labels, best
// guess first. item_id echoes the path the classifier was given.
struct Prediction {
  std::string item_id;
  std::vector<std::string> ranked_labels;

  // Requires at least five labels, all distinct and non-empty.
  void check() const;
};

// A classifier under evaluation: file paths in, one prediction per path out.
// Failures are signalled by throwing AdapterError.
using Adapter =
    std::function<std::vector<Prediction>(const std::vector<std::string>&)>;

// Wraps a shell command as an Adapter. The command receives the file list on
// standard input, one path per line, and must answer with one line per item:
//   item_id<TAB>label1,label2,label3,label4,label5[,...]
// A non-zero exit status or an unparseable line raises AdapterError.
Adapter subprocess_adapter(const std::string& command);

}  // namespace augkit::eval
