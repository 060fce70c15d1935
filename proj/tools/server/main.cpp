#include <CLI11.hpp>
#include <httplib.h>

#include <iostream>

#include "narql/paths.hpp"
#include "service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP API for narql", "narql-server"};
  std::string addr = "127.0.0.1";
  int port = 8750;
  std::string lexicon_path = narql::default_lexicon_path().string();
  std::string seed_path = narql::default_seed_dir().string();
  narql::service::ServiceOptions options;
  std::string webroot;
  app.add_option("--addr", addr, "Bind address")->capture_default_str();
  app.add_option("--port", port, "Port")->capture_default_str()->check(CLI::Range(0, 65535));
  app.add_option("--lexicon", lexicon_path, "Lexicon file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed_path, "Seed directory")->check(CLI::ExistingDirectory);
  app.add_option("--webroot", webroot, "Serve static files from this directory")
      ->check(CLI::ExistingDirectory);
  app.add_flag("--allow-full-delete", options.allow_full_delete,
               "Permit DELETE without WHERE when execute is requested");
  CLI11_PARSE(app, argc, argv);
  options.webroot = webroot;

  try {
    narql::Engine engine(narql::load_lexicon_file(lexicon_path),
                         narql::db::Database::load_seed(seed_path));
    narql::service::Service service(engine, options);
    httplib::Server server;
    service.mount(server);
    std::cerr << "narql-server listening on http://" << addr << ':' << port << '\n';
    if (!server.listen(addr, port)) {
      std::cerr << "narql-server: cannot bind " << addr << ':' << port << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "narql-server: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
