#pragma once

#include <string>
#include <vector>

#include "augkit/image/bitmap_font.hpp"
#include "augkit/image/raster.hpp"

namespace augkit {

// Bundled asset bundle: bitmap font, emoji sprites, screenshot templates,
// stock images/masks, background audio, and the text tables. The root is
// taken from (in order) a set_root() call, the AUGKIT_ASSETS environment
// variable, the compiled-in source-tree default.
//
// Assets are immutable after load; loads are lazy and cached.
class AssetStore {
 public:
  struct ScreenshotTemplate {
    image::Raster img;
    int content_x = 0, content_y = 0, content_w = 0, content_h = 0;
  };

  static AssetStore& instance();

  // Overrides the asset root and drops caches. Intended for startup or
  // tests, not concurrent use.
  static void set_root(const std::string& path);

  const std::string& root() const { return root_; }

  // Absolute path of an asset file; throws AssetError if absent.
  std::string file(const std::string& relative) const;

  const image::BitmapFont& font() const;

  const image::Raster& emoji(const std::string& name) const;
  std::vector<std::string> emoji_names() const;

  const ScreenshotTemplate& screenshot_template(const std::string& id) const;
  std::vector<std::string> template_names() const;

  // assets/images/<name>.png
  const image::Raster& stock_image(const std::string& name) const;

 private:
  AssetStore();
  void load_templates() const;

  std::string root_;
  mutable bool font_loaded_ = false;
  mutable image::BitmapFont font_;
  mutable bool templates_loaded_ = false;
  mutable std::vector<std::pair<std::string, ScreenshotTemplate>> templates_;
  mutable std::vector<std::pair<std::string, image::Raster>> emoji_;
  mutable std::vector<std::pair<std::string, image::Raster>> stock_;
};

}  // namespace augkit
