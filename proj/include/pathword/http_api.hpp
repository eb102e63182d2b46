#ifndef PATHWORD_HTTP_API_HPP_
#define PATHWORD_HTTP_API_HPP_

#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace pathword {

class AuthService;

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON, empty for 204
};

// Transport-independent request handling for the wire protocol:
//   POST   /enroll                  {user, label, path, grid_params}
//   POST   /challenge               {user, label}
//   POST   /verify                  {challenge_id, password}
//   DELETE /enrollment/{user}/{label}
// Unknown routes are 404, bad bodies 400.
ApiResponse handle_request(AuthService& service, std::string_view method,
                           std::string_view path, std::string_view body);

// Binds the routes above on `server`.
void register_routes(httplib::Server& server, AuthService& service);

}  // namespace pathword

#endif  // PATHWORD_HTTP_API_HPP_
