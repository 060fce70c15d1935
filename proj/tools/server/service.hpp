#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "narql/engine.hpp"

namespace httplib {
class Server;
}

namespace narql::service {

struct HttpResult {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  bool allow_full_delete = false;
  std::size_t max_text_chars = 2000;  ///< counted in code points
  std::filesystem::path webroot;      ///< empty: no static files
};

/// HTTP handlers over an Engine. The handlers are plain functions of the
/// request body so they can be tested without a socket.
///
///   POST /api/translate  {"text": "...", "execute": false}
///   GET  /api/schema
///   GET  /api/languages
class Service {
 public:
  Service(Engine& engine, ServiceOptions options = {});

  HttpResult translate(std::string_view body);
  HttpResult schema() const;
  HttpResult languages() const;

  /// Registers the routes above, plus static files under `/` when a
  /// webroot is configured.
  void mount(httplib::Server& server);

 private:
  Engine& engine_;
  ServiceOptions options_;
};

}  // namespace narql::service
