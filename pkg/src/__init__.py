"""Zero-shot Sound Event Classification - Core Package"""
