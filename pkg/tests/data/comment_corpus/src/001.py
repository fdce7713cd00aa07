s = "# not a comment"
