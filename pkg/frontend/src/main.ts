import { HttpApi } from "./api";
import { createApp } from "./app";

const params = new URLSearchParams(window.location.search);
const api = new HttpApi(params.get("api") ?? "");
const root = document.getElementById("app");
if (root) {
  void createApp(root, api).load(params.get("exercise") ?? undefined);
}
