#pragma once

#include <string>

#include <httplib.h>

#include "pcdisc/service.hpp"

namespace pcdisc {

/// Registers the session API on an httplib server:
///   POST  /sessions                 create from {"labels", "matrix"}
///   GET   /sessions/{id}            bundle + step log
///   PATCH /sessions/{id}/entries    {"i", "j", "value"}
///   POST  /sessions/{id}/undo
///   GET   /healthz
inline void mount(httplib::Server& server, SessionService& service) {
  auto send = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS"}});

  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/healthz", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.health());
  });
  server.Post("/sessions", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.create(req.body));
  });
  server.Get(R"(/sessions/([0-9a-zA-Z_-]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get(req.matches[1]));
  });
  server.Patch(R"(/sessions/([0-9a-zA-Z_-]+)/entries)",
               [&service, send](const httplib::Request& req, httplib::Response& res) {
                 send(res, service.patch(req.matches[1], req.body));
               });
  server.Post(R"(/sessions/([0-9a-zA-Z_-]+)/undo)",
              [&service, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.undo(req.matches[1]));
              });
}

}  // namespace pcdisc
