#pragma once

#include <map>
#include <memory>
#include <string>

#include "counterquill/error.hpp"
#include "counterquill/service.hpp"

namespace httplib {
class Server;
}

namespace counterquill::server {

struct ApiRequest {
    std::string method;  // GET or POST
    std::string path;
    std::multimap<std::string, std::string> query;
    std::string body;
    std::string authorization;  // raw Authorization header
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

int http_status(ErrorCode code);
ApiResponse error_response(ErrorCode code, const std::string& message);

// Routes requests to the service. Transport-free so tests can drive it
// directly; HttpServer feeds it from sockets.
class Api {
public:
    explicit Api(Service& service, std::string auth_token = {});

    ApiResponse handle(const ApiRequest& request) const;

private:
    Service& service_;
    std::string auth_token_;
};

class HttpServer {
public:
    HttpServer(Service& service, std::string auth_token = {});
    ~HttpServer();

    // Returns the bound port, or -1. Port 0 picks a free one.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool listen_after_bind();
    void stop();
    bool running() const;

private:
    Api api_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace counterquill::server
