#include "augkit/assets.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <memory>

#include <json.hpp>

#include "augkit/errors.hpp"
#include "augkit/image/codecs.hpp"

#ifndef AUGKIT_DEFAULT_ASSET_DIR
#define AUGKIT_DEFAULT_ASSET_DIR "assets"
#endif

namespace augkit {

namespace {

std::unique_ptr<AssetStore>& store_slot() {
  static std::unique_ptr<AssetStore> slot;
  return slot;
}

std::string* root_override() {
  static std::string override_path;
  return &override_path;
}

}  // namespace

AssetStore::AssetStore() {
  if (!root_override()->empty()) {
    root_ = *root_override();
  } else if (const char* env = std::getenv("AUGKIT_ASSETS");
             env && *env != '\0') {
    root_ = env;
  } else {
    root_ = AUGKIT_DEFAULT_ASSET_DIR;
  }
  if (!std::filesystem::is_directory(root_))
    throw AssetError("asset directory not found: " + root_ +
                     " (set AUGKIT_ASSETS)");
}

AssetStore& AssetStore::instance() {
  auto& slot = store_slot();
  if (!slot) slot.reset(new AssetStore());
  return *slot;
}

void AssetStore::set_root(const std::string& path) {
  *root_override() = path;
  store_slot().reset();
}

std::string AssetStore::file(const std::string& relative) const {
  const std::string path = (std::filesystem::path(root_) / relative).string();
  if (!std::filesystem::is_regular_file(path))
    throw AssetError("missing asset: " + path);
  return path;
}

const image::BitmapFont& AssetStore::font() const {
  if (!font_loaded_) {
    font_ = image::BitmapFont::load(file("font/font.png"), file("font/font.json"));
    font_loaded_ = true;
  }
  return font_;
}

const image::Raster& AssetStore::emoji(const std::string& name) const {
  for (const auto& [key, img] : emoji_)
    if (key == name) return img;
  image::Raster img =
      image::to_channels(image::load_png(file("emoji/" + name + ".png")), 4);
  emoji_.emplace_back(name, std::move(img));
  return emoji_.back().second;
}

std::vector<std::string> AssetStore::emoji_names() const {
  std::vector<std::string> names;
  const auto dir = std::filesystem::path(root_) / "emoji";
  if (std::filesystem::is_directory(dir))
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.path().extension() == ".png")
        names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

void AssetStore::load_templates() const {
  if (templates_loaded_) return;
  nlohmann::json manifest;
  try {
    manifest =
        nlohmann::json::parse(image::read_file(file("templates/templates.json")));
  } catch (const nlohmann::json::exception& e) {
    throw AssetError("template manifest is not valid JSON: " +
                     std::string(e.what()));
  }
  for (const auto& [id, entry] : manifest.items()) {
    ScreenshotTemplate t;
    t.img = image::load_png(file("templates/" +
                                 entry.at("file").get<std::string>()));
    const auto& rect = entry.at("content_rect");
    t.content_x = rect.at(0).get<int>();
    t.content_y = rect.at(1).get<int>();
    t.content_w = rect.at(2).get<int>();
    t.content_h = rect.at(3).get<int>();
    if (t.content_w < 1 || t.content_h < 1)
      throw AssetError("template '" + id + "' has a zero-area content rect");
    if (t.content_x < 0 || t.content_y < 0 ||
        t.content_x + t.content_w > t.img.width ||
        t.content_y + t.content_h > t.img.height)
      throw AssetError("template '" + id +
                       "' content rect escapes its bounds");
    templates_.emplace_back(id, std::move(t));
  }
  templates_loaded_ = true;
}

const AssetStore::ScreenshotTemplate& AssetStore::screenshot_template(
    const std::string& id) const {
  load_templates();
  for (const auto& [key, t] : templates_)
    if (key == id) return t;
  throw AssetError("unknown screenshot template: " + id);
}

std::vector<std::string> AssetStore::template_names() const {
  load_templates();
  std::vector<std::string> names;
  for (const auto& [key, t] : templates_) names.push_back(key);
  return names;
}

const image::Raster& AssetStore::stock_image(const std::string& name) const {
  for (const auto& [key, img] : stock_)
    if (key == name) return img;
  image::Raster img = image::load_png(file("images/" + name + ".png"));
  stock_.emplace_back(name, std::move(img));
  return stock_.back().second;
}

}  // namespace augkit
