import { ApiClient } from "./api.js";
import { MapApp } from "./app.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app element");
}
const app = new MapApp(root, new ApiClient());
void app.init();
