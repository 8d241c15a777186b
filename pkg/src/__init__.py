"""QRT Workbench sources."""
