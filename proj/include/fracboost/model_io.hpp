#pragma once

#include <filesystem>
#include <string>

#include "fracboost/boosting.hpp"

namespace fracboost {

// Self-describing line-oriented text format. All real values are stored as
// shortest round-trip decimal text, so load-then-predict matches in-memory
// prediction bit for bit. Trees are stored as preorder node lists. The
// model's schema and fitted encoding map are embedded so predict-time
// encoding is reproducible from the file alone.
std::string serialize_model(const BoostedModel& model);

BoostedModel deserialize_model(const std::string& text);

void save_model(const BoostedModel& model, const std::filesystem::path& path);
BoostedModel load_model(const std::filesystem::path& path);

}  // namespace fracboost
