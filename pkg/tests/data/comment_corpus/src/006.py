label = f"#tag {1 + 2}"
