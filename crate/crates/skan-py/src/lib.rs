//! Python bindings; populated once the core stabilizes.
