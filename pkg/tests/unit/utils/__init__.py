# Utils tests package
