fmt = f"{{literal}} {1}"  # braces
