#include "service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "narql/json.hpp"

namespace narql::service {

namespace {

using nlohmann::json;

HttpResult bad_request(std::string message) {
  return {400, json{{"error", {{"code", "BadRequest"}, {"message", std::move(message)}, {"language", "en"}}}}.dump()};
}

std::size_t code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

void reply(httplib::Response& res, const HttpResult& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

Service::Service(Engine& engine, ServiceOptions options)
    : engine_(engine), options_(std::move(options)) {}

HttpResult Service::translate(std::string_view body) {
  json request = json::parse(body, nullptr, false);
  if (request.is_discarded() || !request.is_object()) return bad_request("body must be a JSON object");
  auto text = request.find("text");
  if (text == request.end() || !text->is_string()) return bad_request("\"text\" must be a string");
  bool execute = false;
  if (auto e = request.find("execute"); e != request.end()) {
    if (!e->is_boolean()) return bad_request("\"execute\" must be a boolean");
    execute = e->get<bool>();
  }
  const auto& narration = text->get_ref<const std::string&>();
  if (code_points(narration) > options_.max_text_chars)
    return bad_request("\"text\" exceeds " + std::to_string(options_.max_text_chars) + " characters");

  RunOptions run;
  run.policy = execute ? ExecutionPolicy::Always : ExecutionPolicy::Never;
  run.execute.allow_full_delete = options_.allow_full_delete;
  return {200, narql::json::report(engine_.run(narration, run))};
}

HttpResult Service::schema() const { return {200, narql::json::schema(engine_.schema())}; }

HttpResult Service::languages() const { return {200, narql::json::languages(engine_.lexicon())}; }

void Service::mount(httplib::Server& server) {
  server.Post("/api/translate", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, translate(req.body));
  });
  server.Get("/api/schema", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, schema());
  });
  server.Get("/api/languages", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, languages());
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          if (ep) std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(
            nlohmann::json{{"error", {{"code", "InternalError"}, {"message", what}, {"language", "en"}}}}
                .dump(-1, ' ', false, nlohmann::json::error_handler_t::replace),
            "application/json");
      });
  if (!options_.webroot.empty()) server.set_mount_point("/", options_.webroot.string());
}

}  // namespace narql::service
