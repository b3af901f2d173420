"""Laboratory application plumbing."""
