// Populates #root and removes the preloader; never runs under nojs.
document.addEventListener("DOMContentLoaded", function () {
  var root = document.getElementById("root");
  if (root) root.innerHTML = "<h1>App</h1><p>rendered client-side</p>";
  var pre = document.getElementById("preloader");
  if (pre) pre.remove();
});
