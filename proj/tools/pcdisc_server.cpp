#include <csignal>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pcdisc/http.hpp"

namespace {
httplib::Server* g_server = nullptr;
}

int main(int argc, char** argv) {
  CLI::App app{"HTTP API for pairwise-comparison revision sessions", "pcdisc-server"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string journal;
  app.add_option("--host", host, "Bind address")->envname("PCDISC_HOST")->capture_default_str();
  app.add_option("--port", port, "Listen port")->envname("PCDISC_PORT")->check(CLI::Range(0, 65535))->capture_default_str();
  app.add_option("--journal", journal, "Append-only JSON-lines session journal, replayed at startup")
      ->envname("PCDISC_JOURNAL");
  CLI11_PARSE(app, argc, argv);

  std::optional<std::filesystem::path> journal_path;
  if (!journal.empty()) journal_path = journal;

  try {
    pcdisc::SessionService service({}, journal_path);
    httplib::Server server;
    pcdisc::mount(server, service);
    g_server = &server;
    std::signal(SIGINT, [](int) { g_server->stop(); });
    std::signal(SIGTERM, [](int) { g_server->stop(); });
    std::cerr << "listening on " << host << ':' << port << " (" << service.size() << " sessions restored)\n";
    if (!server.listen(host, port)) {
      std::cerr << "cannot listen on " << host << ':' << port << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
